#include "lspec/analysis.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <thread>

#include "lspec/errors.hpp"

namespace lspec {

namespace {
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
} // namespace

int count_in_interval(const Spectrum& s, double a, double b) {
    if (a > b) throw IntervalError("count_in_interval: a > b");
    int count = 0;
    for (double v : s.values) count += (v >= a && v <= b);
    return count;
}

double near_zero_fraction(const Spectrum& s, double eps) {
    if (eps <= 0.0) throw ConfigError("eps must be > 0");
    if (s.values.empty()) return 0.0;
    int count = 0;
    for (double v : s.values) count += std::fabs(v) < eps;
    return double(count) / double(s.values.size());
}

void parallel_reps(int reps, int threads, const std::function<void(int)>& f) {
    int workers = threads > 0 ? threads : int(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = std::min(workers, reps);
    if (workers <= 1) {
        for (int r = 0; r < reps; ++r) f(r);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int r = next.fetch_add(1); r < reps; r = next.fetch_add(1)) f(r);
        });
    for (auto& t : pool) t.join();
}

VerificationReport verify_extremes(const SimulationConfig& config,
                                   DistributionKind dist, int reps,
                                   std::uint64_t seed0,
                                   const VerificationOptions& options) {
    config.validate();
    if (reps < 1) throw ConfigError("reps must be >= 1");

    VerificationReport report;
    report.config = config;
    report.dist = dist;
    report.seed0 = seed0;
    report.reps = reps;
    report.options = options;
    report.d_cn = lsd_boundary(config.ratio());
    report.records.resize(reps);

    const LsdModel model(config.ratio());
    const double d = report.d_cn;

    parallel_reps(reps, options.threads, [&](int r) {
        RepRecord rec;
        rec.seed = seed0 + std::uint64_t(r);
        try {
            const NoisePanel panel = sample_panel(config, dist, rec.seed);
            const HermitianMatrix m = build_m_tau(panel, config.tau);
            const Spectrum s = hermitian_eigenvalues(m);
            const auto [lo, hi] = extreme(s);
            rec.lambda_min = lo;
            rec.lambda_max = hi;
            rec.outlier_count =
                count_in_interval(s, d + options.probe_inner, d + options.probe_outer) +
                count_in_interval(s, -d - options.probe_outer, -d - options.probe_inner);
            const double norm = std::max(std::fabs(lo), std::fabs(hi));
            rec.zero_count = 0;
            rec.near_zero_count = 0;
            for (double v : s.values) {
                rec.zero_count += std::fabs(v) < options.zero_eps_rel * norm;
                rec.near_zero_count += std::fabs(v) < options.near_zero_eps;
            }
            if (options.compute_ks) rec.ks = kolmogorov_distance(esd(s), model);
        } catch (const SolverFailure& sf) {
            rec.solver_ok = false;
            rec.solver_iterations = sf.iterations;
        }
        report.records[r] = rec;
    });
    return report;
}

VerificationSummary VerificationReport::summary() const {
    VerificationSummary s;
    s.min_zero_count = records.empty() ? 0 : records.front().zero_count;
    double ks_sum = 0.0;
    for (const auto& rec : records) {
        s.max_dev_max = std::max(s.max_dev_max, std::fabs(rec.lambda_max - d_cn));
        s.max_dev_min = std::max(s.max_dev_min, std::fabs(rec.lambda_min + d_cn));
        s.total_outliers += rec.outlier_count;
        s.min_zero_count = std::min(s.min_zero_count, rec.zero_count);
        s.max_ks = std::max(s.max_ks, rec.ks);
        ks_sum += rec.ks;
        s.all_solved = s.all_solved && rec.solver_ok;
    }
    s.mean_ks = records.empty() ? 0.0 : ks_sum / double(records.size());
    return s;
}

void write_report_json(const VerificationReport& r, std::ostream& os) {
    const VerificationSummary s = r.summary();
    os << "{\n"
       << "  \"config\": {\"n\": " << r.config.n << ", \"T\": " << r.config.T
       << ", \"tau\": " << r.config.tau << ", \"dist\": \"" << to_string(r.dist)
       << "\", \"seed0\": " << r.seed0 << ", \"reps\": " << r.reps << "},\n"
       << "  \"d_cn\": " << fmt17(r.d_cn) << ",\n"
       << "  \"probe\": [" << fmt17(r.d_cn + r.options.probe_inner) << ", "
       << fmt17(r.d_cn + r.options.probe_outer) << "],\n"
       << "  \"summary\": {\"max_dev_max\": " << fmt17(s.max_dev_max)
       << ", \"max_dev_min\": " << fmt17(s.max_dev_min)
       << ", \"total_outliers\": " << s.total_outliers
       << ", \"min_zero_count\": " << s.min_zero_count
       << ", \"max_ks\": " << fmt17(s.max_ks)
       << ", \"mean_ks\": " << fmt17(s.mean_ks)
       << ", \"all_solved\": " << (s.all_solved ? "true" : "false") << "},\n"
       << "  \"records\": [\n";
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        const auto& rec = r.records[i];
        os << "    {\"seed\": " << rec.seed
           << ", \"lambda_min\": " << fmt17(rec.lambda_min)
           << ", \"lambda_max\": " << fmt17(rec.lambda_max)
           << ", \"outliers\": " << rec.outlier_count
           << ", \"zero_count\": " << rec.zero_count
           << ", \"near_zero_count\": " << rec.near_zero_count
           << ", \"ks\": " << fmt17(rec.ks)
           << ", \"solver_ok\": " << (rec.solver_ok ? "true" : "false") << "}"
           << (i + 1 < r.records.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
}

void write_report_summary_csv(const VerificationReport& r, std::ostream& os) {
    const VerificationSummary s = r.summary();
    os << "n,T,tau,dist,reps,d_cn,max_dev_max,max_dev_min,total_outliers,"
          "min_zero_count,max_ks,mean_ks,all_solved\n";
    os << r.config.n << ',' << r.config.T << ',' << r.config.tau << ','
       << to_string(r.dist) << ',' << r.reps << ',' << fmt17(r.d_cn) << ','
       << fmt17(s.max_dev_max) << ',' << fmt17(s.max_dev_min) << ','
       << s.total_outliers << ',' << s.min_zero_count << ',' << fmt17(s.max_ks)
       << ',' << fmt17(s.mean_ks) << ',' << (s.all_solved ? 1 : 0) << "\n";
}

DetectionReport detect_orders(const ObservationPanel& obs, int tau_max,
                              double delta0, double delta1) {
    if (tau_max < 1) throw ConfigError("tau_max must be >= 1");
    if (tau_max > obs.fc.base.tau)
        throw DimensionError("panel built for lags up to " +
                             std::to_string(obs.fc.base.tau) +
                             "; requested tau_max " + std::to_string(tau_max));

    const double cn = obs.fc.base.ratio();
    DetectionReport rep;
    rep.delta0 = delta0;
    rep.delta1 = delta1;
    rep.threshold0 = mp_upper_edge(cn) * (1.0 + delta0);
    rep.threshold_tau = lsd_boundary(cn) + delta1;
    rep.counts.resize(tau_max + 1, 0);

    for (int tau = 0; tau <= tau_max; ++tau) {
        const Spectrum s = hermitian_eigenvalues(build_phi_tau(obs, tau));
        int count = 0;
        if (tau == 0) {
            for (double v : s.values) count += v > rep.threshold0;
        } else {
            for (double v : s.values) count += std::fabs(v) > rep.threshold_tau;
        }
        rep.counts[tau] = count;
    }

    rep.q_hat = 0;
    for (int tau = tau_max; tau >= 1; --tau)
        if (rep.counts[tau] > 0) {
            rep.q_hat = tau;
            break;
        }
    rep.k_hat = int(std::lround(double(rep.counts[0]) / double(rep.q_hat + 1)));
    if (rep.k_hat < 0) rep.k_hat = 0;
    return rep;
}

void write_detection_json(const DetectionReport& r, std::ostream& os) {
    os << "{\"counts\": [";
    for (std::size_t i = 0; i < r.counts.size(); ++i)
        os << (i ? ", " : "") << r.counts[i];
    os << "], \"k_hat\": " << r.k_hat << ", \"q_hat\": " << r.q_hat
       << ", \"delta0\": " << fmt17(r.delta0)
       << ", \"delta1\": " << fmt17(r.delta1)
       << ", \"threshold0\": " << fmt17(r.threshold0)
       << ", \"threshold_tau\": " << fmt17(r.threshold_tau) << "}\n";
}

double esd_distance(const EmpiricalSpectralDistribution& a,
                    const EmpiricalSpectralDistribution& b) {
    double dist = 0.0;
    for (double v : a.values()) {
        dist = std::max(dist, std::fabs(a(v) - b(v)));
        dist = std::max(dist, std::fabs(a.left(v) - b.left(v)));
    }
    for (double v : b.values()) {
        dist = std::max(dist, std::fabs(a(v) - b(v)));
        dist = std::max(dist, std::fabs(a.left(v) - b.left(v)));
    }
    return dist;
}

} // namespace lspec
