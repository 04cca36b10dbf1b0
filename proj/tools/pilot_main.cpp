// Pilot calibration runs behind the frozen test tolerances. Each section
// prints the observed statistic next to the threshold the test suites use;
// rerun after any change to the generators or the solver.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "lspec/analysis.hpp"

using namespace lspec;

namespace {

double quantile_of(std::vector<double> v, double p) {
    std::sort(v.begin(), v.end());
    const std::size_t i = std::size_t(p * double(v.size() - 1));
    return v[i];
}

void extremes_section(int reps, int threads) {
    std::printf("== extremes @ (200,1000,1) complex-gaussian, %d seeds ==\n", reps);
    VerificationOptions opt;
    opt.threads = threads;
    const auto rep = verify_extremes({200, 1000, 1}, DistributionKind::ComplexGaussian,
                                     reps, 1, opt);
    std::vector<double> devs;
    for (const auto& r : rep.records) {
        devs.push_back(std::fabs(r.lambda_max - rep.d_cn));
        devs.push_back(std::fabs(r.lambda_min + rep.d_cn));
    }
    std::printf("  d(c_n) = %.6f\n", rep.d_cn);
    std::printf("  max dev = %.4f   p90 = %.4f   (frozen tolerance 0.15)\n",
                *std::max_element(devs.begin(), devs.end()), quantile_of(devs, 0.90));
    std::printf("  probe-interval outliers = %d (frozen: 0 allowed)\n",
                rep.summary().total_outliers);
    std::printf("  max KS = %.4f  mean KS = %.4f  (frozen tolerance 0.06)\n",
                rep.summary().max_ks, rep.summary().mean_ks);
}

void theorem1_section(int reps, int threads) {
    std::printf("== probe intervals [d+0.2, d+1.0] and mirror, %d seeds ==\n", reps);
    VerificationOptions opt;
    opt.threads = threads;
    for (const auto cfg : {SimulationConfig{200, 1000, 1}, SimulationConfig{300, 150, 1}}) {
        const auto rep =
            verify_extremes(cfg, DistributionKind::ComplexGaussian, reps, 10000, opt);
        std::printf("  (n,T)=(%d,%d) c_n=%.3f d=%.4f outliers=%d\n", cfg.n, cfg.T,
                    cfg.ratio(), rep.d_cn, rep.summary().total_outliers);
    }
}

void theorem3_section(int reps, int threads) {
    std::printf("== c = 1: lambda_max vs 2 @ (300,300,1), %d seeds ==\n", reps);
    VerificationOptions opt;
    opt.threads = threads;
    opt.compute_ks = false;
    const auto rep =
        verify_extremes({300, 300, 1}, DistributionKind::ComplexGaussian, reps, 30000, opt);
    std::printf("  max |lambda_max - 2| = %.4f  (frozen tolerance 0.2)\n",
                rep.summary().max_dev_max);
}

void pointmass_section(int threads) {
    std::printf("== point mass @ (500,200,1), 3 seeds ==\n");
    VerificationOptions opt;
    opt.threads = threads;
    opt.compute_ks = false;
    const auto rep =
        verify_extremes({500, 200, 1}, DistributionKind::ComplexGaussian, 3, 77, opt);
    for (const auto& r : rep.records)
        std::printf("  seed %llu: zero_count=%d (bound 299)  near_zero_frac=%.4f (atom 0.6)\n",
                    (unsigned long long)r.seed, r.zero_count,
                    double(r.near_zero_count) / 500.0);
}

void lag_section(int reps, int threads) {
    std::printf("== lag invariance: ESD(tau=1) vs ESD(tau=3) @ (200,1000), %d seeds ==\n",
                reps);
    std::vector<double> dist(reps, 0.0);
    parallel_reps(reps, threads, [&](int r) {
        const auto panel = sample_panel({200, 1000, 3}, DistributionKind::ComplexGaussian,
                                        40000 + std::uint64_t(r));
        dist[r] = esd_distance(esd(hermitian_eigenvalues(build_m_tau(panel, 1))),
                               esd(hermitian_eigenvalues(build_m_tau(panel, 3))));
    });
    std::printf("  max = %.4f  (frozen tolerance 0.08)\n",
                *std::max_element(dist.begin(), dist.end()));
}

void trend_section(int reps, int threads) {
    std::printf("== KS trend, T = 5n, %d seeds each ==\n", reps);
    VerificationOptions opt;
    opt.threads = threads;
    for (int n : {100, 200, 400}) {
        const auto rep = verify_extremes({n, 5 * n, 1}, DistributionKind::ComplexGaussian,
                                         reps, 50000, opt);
        std::vector<double> ks;
        for (const auto& r : rep.records) ks.push_back(r.ks);
        std::sort(ks.begin(), ks.end());
        std::printf("  n=%d median KS = %.4f\n", n, ks[ks.size() / 2]);
    }
}

void detection_section(int reps, int threads) {
    std::printf("== detection separation @ (200,1000), k=1, q=1, %d seeds ==\n", reps);
    // smallest signal magnitude at lags <= q vs largest magnitude at lags > q:
    // the lag threshold d + delta1 must sit between them
    for (double scale : {2.0, 3.0, 5.0}) {
        std::vector<double> sig(reps, 1e300), spur(reps, 0.0);
        parallel_reps(reps, threads, [&](int r) {
            const std::uint64_t sd = 60000 + std::uint64_t(r);
            const auto fc = make_factor_config({200, 1000, 3}, 1, 1, scale, sd);
            const auto obs = simulate_factor_panel(fc, sd);
            for (int tau = 1; tau <= 3; ++tau) {
                const auto s = hermitian_eigenvalues(build_phi_tau(obs, tau));
                const double m =
                    std::max(std::fabs(s.values.front()), std::fabs(s.values.back()));
                if (tau <= 1)
                    sig[r] = std::min(sig[r], m);
                else
                    spur[r] = std::max(spur[r], m);
            }
        });
        std::printf("  scale %.1f: min signal (tau<=q) = %.3f ; max spurious (tau>q) = %.3f\n",
                    scale, *std::min_element(sig.begin(), sig.end()),
                    *std::max_element(spur.begin(), spur.end()));
    }
    std::printf("  frozen margins: delta0 = 0.15, delta1 = 5.0 at scale 5\n");

    int noise_ok = 0, strong_ok = 0;
    std::vector<int> a(reps, 0), b(reps, 0);
    parallel_reps(reps, threads, [&](int r) {
        const std::uint64_t sd = 61000 + std::uint64_t(r);
        const auto noise = simulate_factor_panel(
            make_factor_config({200, 1000, 3}, 0, 0, 0.0, sd), sd);
        const auto dn = detect_orders(noise, 3, 0.15, 0.15);
        a[r] = (dn.k_hat == 0 && dn.q_hat == 0);
        const auto strong = simulate_factor_panel(
            make_factor_config({200, 1000, 3}, 1, 1, 5.0, sd), sd);
        const auto ds = detect_orders(strong, 3, 0.15, 5.0);
        b[r] = (ds.k_hat == 1 && ds.q_hat == 1);
    });
    for (int r = 0; r < reps; ++r) {
        noise_ok += a[r];
        strong_ok += b[r];
    }
    std::printf("  pure-noise (0,0): %d/%d ; strong (1,1): %d/%d (frozen: all, >=90%%)\n",
                noise_ok, reps, strong_ok, reps);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pilot calibration sweeps behind the frozen test tolerances"};
    bool quick = false;
    int threads = 0;
    app.add_flag("--quick", quick, "smaller rep counts for a fast pass");
    app.add_option("--threads", threads, "worker cap (0 = auto)");
    CLI11_PARSE(app, argc, argv);

    const int big = quick ? 40 : 200;
    const int med = quick ? 20 : 50;
    const int sml = quick ? 10 : 20;

    extremes_section(big, threads);
    theorem1_section(med, threads);
    theorem3_section(quick ? 5 : 10, threads);
    pointmass_section(threads);
    lag_section(sml, threads);
    trend_section(sml, threads);
    detection_section(sml, threads);
    return 0;
}
