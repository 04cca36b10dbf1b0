#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lspec/noise.hpp"

using namespace lspec;

TEST_CASE("config validation") {
    CHECK_THROWS_AS(sample_panel({0, 10, 1}, DistributionKind::Rademacher, 1), ConfigError);
    CHECK_THROWS_AS(sample_panel({5, 0, 0}, DistributionKind::Rademacher, 1), ConfigError);
    CHECK_THROWS_AS(sample_panel({5, 10, -1}, DistributionKind::Rademacher, 1), ConfigError);
    CHECK_THROWS_AS(sample_panel({5, 10, 10}, DistributionKind::Rademacher, 1), ConfigError);
}

TEST_CASE("rademacher panel: dimensions, entries, determinism") {
    const SimulationConfig cfg{2, 3, 1};
    const auto p = sample_panel(cfg, DistributionKind::Rademacher, 7);
    CHECK(p.rows == 2);
    CHECK(p.cols == 4);
    for (const auto& v : p.data) {
        CHECK((v.real() == 1.0 || v.real() == -1.0));
        CHECK(v.imag() == 0.0);
    }
    const auto q = sample_panel(cfg, DistributionKind::Rademacher, 7);
    CHECK(p.data == q.data);  // bit-identical
    const auto r = sample_panel(cfg, DistributionKind::Rademacher, 8);
    CHECK(p.data != r.data);
}

TEST_CASE("rademacher empirical variance is exactly 1") {
    const auto p = sample_panel({40, 50, 2}, DistributionKind::Rademacher, 3);
    double sq = 0.0;
    for (const auto& v : p.data) sq += std::norm(v);
    CHECK(sq / double(p.data.size()) == 1.0);
}

TEST_CASE("complex gaussian panel mean obeys the CLT bound across seeds") {
    // |mean of n(T+tau) entries| < 4 sqrt(2)/sqrt(nT) for at least 99% of seeds
    const SimulationConfig cfg{200, 1000, 1};
    const double bound = 4.0 / std::sqrt(200.0 * 1000.0) * std::sqrt(2.0);
    int ok = 0;
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) {
        const auto p = sample_panel(cfg, DistributionKind::ComplexGaussian, 1000 + s);
        cplx sum = 0.0;
        for (const auto& v : p.data) sum += v;
        ok += std::abs(sum) / double(p.data.size()) < bound;
    }
    CHECK(ok >= seeds * 99 / 100);
}

TEST_CASE("population moments encoded in preprocess are exact") {
    for (auto dist : {DistributionKind::ComplexGaussian, DistributionKind::RealGaussian,
                      DistributionKind::Rademacher}) {
        CHECK(truncated_mean(dist, 2.0) == 0.0);
        // C -> infinity recovers unit variance
        CHECK(truncated_sigma(dist, 40.0) == doctest::Approx(1.0).epsilon(1e-15));
    }
    // closed forms at finite C
    CHECK(truncated_sigma(DistributionKind::RealGaussian, 1.0) ==
          doctest::Approx(std::sqrt(std::erf(1.0 / std::sqrt(2.0)) -
                                    std::sqrt(2.0 / M_PI) * std::exp(-0.5)))
              .epsilon(1e-15));
    CHECK(truncated_sigma(DistributionKind::ComplexGaussian, 2.0) ==
          doctest::Approx(std::sqrt(1.0 - 5.0 * std::exp(-4.0))).epsilon(1e-15));
}

TEST_CASE("preprocess leaves a rademacher panel unchanged (C = 2)") {
    const auto p = sample_panel({8, 16, 0}, DistributionKind::Rademacher, 11);
    const auto q = preprocess(p, 2.0);
    CHECK(p.data == q.data);
    // and is idempotent
    const auto r = preprocess(q, 2.0);
    CHECK(q.data == r.data);
}

TEST_CASE("preprocess below the rademacher support is degenerate") {
    const auto p = sample_panel({2, 4, 0}, DistributionKind::Rademacher, 1);
    CHECK_THROWS_AS(preprocess(p, 0.5), DegenerateTruncationError);
}

TEST_CASE("complex gaussian truncation at C = 10 is a no-op to 1e-10") {
    const auto p = sample_panel({100, 100, 0}, DistributionKind::ComplexGaussian, 5);
    const auto q = preprocess(p, 10.0);
    // tail mass beyond 10: (1 + 100) e^{-100}; sigma differs from 1 by ~5e-42
    double worst = 0.0;
    for (std::size_t i = 0; i < p.data.size(); ++i)
        worst = std::max(worst, std::abs(p.data[i] - q.data[i]));
    CHECK(worst < 1e-10);
}

TEST_CASE("real gaussian entries stay within the stated bound after preprocess") {
    const double C = 1.0;
    const auto p = sample_panel({50, 80, 1}, DistributionKind::RealGaussian, 21);
    const auto q = preprocess(p, C);
    const double mu = truncated_mean(DistributionKind::RealGaussian, C);
    const double sigma = truncated_sigma(DistributionKind::RealGaussian, C);
    const double bound = (1.0 + std::fabs(mu)) / sigma;
    for (const auto& v : q.data) {
        CHECK(v.real() >= -bound);
        CHECK(v.real() <= bound);
    }
}

TEST_CASE("panel csv round-trips") {
    const auto p = sample_panel({3, 5, 2}, DistributionKind::ComplexGaussian, 99);
    std::stringstream ss;
    write_panel_csv(p, ss);
    const auto q = read_panel_csv(ss);
    CHECK(q.config.n == p.config.n);
    CHECK(q.config.T == p.config.T);
    CHECK(q.config.tau == p.config.tau);
    CHECK(q.dist == p.dist);
    CHECK(q.seed == p.seed);
    CHECK(q.data == p.data);  // 17 significant digits round-trip doubles
}
