#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "lspec/analysis.hpp"

using namespace lspec;

namespace {

double quantile(const LsdModel& model, double p) {
    double lo = -model.boundary(), hi = model.boundary();
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (model.cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("count_in_interval") {
    const Spectrum s{{-1.0, 0.0, 1.0}};
    CHECK(count_in_interval(s, 0.5, 2.0) == 1);
    CHECK(count_in_interval(s, 2.0, 3.0) == 0);
    CHECK(count_in_interval(s, -1.0, 1.0) == 3);
    CHECK_THROWS_AS(count_in_interval(s, 2.0, 1.0), IntervalError);
}

TEST_CASE("near_zero_fraction") {
    const Spectrum s{{0.0, 0.0, 5.0}};
    CHECK(near_zero_fraction(s, 1e-8) == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(near_zero_fraction(s, 0.0), ConfigError);
}

TEST_CASE("kolmogorov distance: quantile construction stays below 1/n") {
    const LsdModel model(0.2);
    const int n = 50;
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = quantile(model, (i + 0.5) / n);
    const double dist = kolmogorov_distance(EmpiricalSpectralDistribution(v), model);
    CHECK(dist <= 1.0 / n + 1e-9);
}

TEST_CASE("kolmogorov distance picks up the origin atom") {
    // all mass at 0 vs a model with atom 0.6 at 0: distance set at 0^- side
    const LsdModel model(2.5);
    std::vector<double> zeros(10, 0.0);
    const double dist = kolmogorov_distance(EmpiricalSpectralDistribution(zeros), model);
    // sup attained pairing sides at 0: F_n(0) - F(0) = 1 - 0.8 = F(0^-) - F_n(0^-)
    CHECK(dist == doctest::Approx(0.2).epsilon(1e-7));
}

TEST_CASE("identical step functions have distance zero") {
    const EmpiricalSpectralDistribution a({-1.0, 0.5, 2.0});
    const EmpiricalSpectralDistribution b({-1.0, 0.5, 2.0});
    CHECK(esd_distance(a, b) == 0.0);
}

TEST_CASE("esd distance of shifted atoms") {
    const EmpiricalSpectralDistribution a({0.0, 1.0});
    const EmpiricalSpectralDistribution b({0.0, 2.0});
    CHECK(esd_distance(a, b) == doctest::Approx(0.5));
}

TEST_CASE("verify_extremes: record bookkeeping and determinism across workers") {
    const SimulationConfig cfg{30, 150, 1};
    VerificationOptions opt;
    opt.threads = 1;
    auto r1 = verify_extremes(cfg, DistributionKind::ComplexGaussian, 4, 42, opt);
    opt.threads = 4;
    auto r2 = verify_extremes(cfg, DistributionKind::ComplexGaussian, 4, 42, opt);
    REQUIRE(r1.records.size() == 4);
    REQUIRE(r2.records.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(r1.records[i].seed == 42 + std::uint64_t(i));
        CHECK(r1.records[i].lambda_max == r2.records[i].lambda_max);
        CHECK(r1.records[i].lambda_min == r2.records[i].lambda_min);
        CHECK(r1.records[i].ks == r2.records[i].ks);
    }

    const auto single = verify_extremes(cfg, DistributionKind::ComplexGaussian, 1, 7);
    CHECK(single.records.size() == 1);
}

TEST_CASE("verify_extremes at small scale tracks the boundary loosely") {
    const SimulationConfig cfg{50, 250, 1};
    const auto rep = verify_extremes(cfg, DistributionKind::ComplexGaussian, 3, 11);
    const auto s = rep.summary();
    CHECK(s.all_solved);
    CHECK(s.max_dev_max < 0.5);
    CHECK(s.max_dev_min < 0.5);
    CHECK(s.total_outliers == 0);
    CHECK(s.max_ks < 0.25);
}

TEST_CASE("report json fields and summary recomputability") {
    const SimulationConfig cfg{20, 100, 1};
    const auto rep = verify_extremes(cfg, DistributionKind::Rademacher, 3, 5);
    std::stringstream ss;
    write_report_json(rep, ss);
    const auto j = nlohmann::json::parse(ss.str());
    CHECK(j["config"]["n"] == 20);
    CHECK(j["config"]["dist"] == "rademacher");
    CHECK(j["records"].size() == 3);
    // summary recomputable from records
    double max_dev = 0.0;
    for (const auto& r : j["records"])
        max_dev = std::max(max_dev,
                           std::fabs(double(r["lambda_max"]) - double(j["d_cn"])));
    CHECK(max_dev == doctest::Approx(rep.summary().max_dev_max).epsilon(1e-12));

    std::stringstream csv;
    write_report_summary_csv(rep, csv);
    std::string header;
    std::getline(csv, header);
    CHECK(header.find("max_dev_max") != std::string::npos);
}

TEST_CASE("detect_orders input guards") {
    const auto fc = make_factor_config({20, 60, 2}, 0, 0, 0.0, 1);
    const auto obs = simulate_factor_panel(fc, 1);
    CHECK_THROWS_AS(detect_orders(obs, 0), ConfigError);
    CHECK_THROWS_AS(detect_orders(obs, 3), DimensionError);
}

TEST_CASE("pure noise panel detects (0, 0)") {
    const auto fc = make_factor_config({60, 300, 3}, 0, 0, 0.0, 9);
    const auto obs = simulate_factor_panel(fc, 9);
    const auto rep = detect_orders(obs, 3);
    for (int c : rep.counts) CHECK(c == 0);
    CHECK(rep.k_hat == 0);
    CHECK(rep.q_hat == 0);
}

TEST_CASE("strong k=1, q=1 model detects (1, 1) with calibrated margins") {
    const auto fc = make_factor_config({100, 500, 3}, 1, 1, 5.0, 31);
    const auto obs = simulate_factor_panel(fc, 31);
    const auto rep = detect_orders(obs, 3, 0.15, 5.0);
    CHECK(rep.counts[0] == 2);      // k(q+1)
    CHECK(rep.counts[1] > 0);
    CHECK(rep.counts[2] == 0);
    CHECK(rep.counts[3] == 0);
    CHECK(rep.k_hat == 1);
    CHECK(rep.q_hat == 1);

    std::stringstream ss;
    write_detection_json(rep, ss);
    const auto j = nlohmann::json::parse(ss.str());
    CHECK(j["k_hat"] == 1);
    CHECK(j["q_hat"] == 1);
    CHECK(j["counts"].size() == 4);
}

TEST_CASE("equal loadings collapse the lag-0 spike count") {
    // with identical loading matrices the q+1 delayed copies share one
    // direction, so Phi(0) shows k spikes instead of k(q+1)
    const auto fc = make_factor_config({100, 500, 2}, 1, 1, 5.0, 13, /*equal=*/true);
    const auto obs = simulate_factor_panel(fc, 13);
    const auto rep = detect_orders(obs, 2, 0.15, 5.0);
    CHECK(rep.counts[0] == 1);
}

TEST_CASE("phi(0) outliers exceed the mp edge for the spiked model") {
    const auto fc = make_factor_config({80, 400, 1}, 1, 0, 5.0, 3);
    const auto obs = simulate_factor_panel(fc, 3);
    const auto s = hermitian_eigenvalues(build_phi_tau(obs, 0));
    CHECK(s.values.back() > mp_upper_edge(80.0 / 400.0));
}

TEST_CASE("rank-deficiency zero counts appear in the report") {
    const SimulationConfig cfg{80, 30, 1};
    const auto rep = verify_extremes(cfg, DistributionKind::ComplexGaussian, 2, 17);
    for (const auto& rec : rep.records)
        CHECK(rec.zero_count >= 80 - 31);
}
