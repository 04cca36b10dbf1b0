#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "lspec/eig.hpp"
#include "lspec/lsd.hpp"
#include "lspec/matrices.hpp"

namespace lspec {

// Exact sup-distance between a step CDF and a limit CDF with (at most) an
// atom at the origin. Candidates: both one-sided gaps at every eigenvalue
// plus both one-sided gaps at 0.
template <class Model>
double kolmogorov_distance(const EmpiricalSpectralDistribution& fn,
                           const Model& model) {
    double dist = 0.0;
    for (double lam : fn.values()) {
        // left limits pair with left limits: both functions may jump at 0
        dist = std::max(dist, std::fabs(fn(lam) - model.cdf(lam)));
        dist = std::max(dist, std::fabs(fn.left(lam) - model.cdf_left(lam)));
    }
    dist = std::max(dist, std::fabs(fn(0.0) - model.cdf(0.0)));
    dist = std::max(dist, std::fabs(fn.left(0.0) - model.cdf_left(0.0)));
    return dist;
}

int count_in_interval(const Spectrum& s, double a, double b);

double near_zero_fraction(const Spectrum& s, double eps);

struct RepRecord {
    std::uint64_t seed = 0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    int outlier_count = 0;     // eigenvalues in the two probe intervals
    int zero_count = 0;        // |lambda| < zero_eps_rel * ||M||
    int near_zero_count = 0;   // |lambda| < near_zero_eps
    double ks = 0.0;           // Kolmogorov distance to F_{c_n}
    bool solver_ok = true;
    int solver_iterations = 0;
};

struct VerificationOptions {
    int threads = 0;                  // 0 = hardware concurrency
    double probe_inner = 0.2;         // probe interval [d+inner, d+outer]
    double probe_outer = 1.0;
    double zero_eps_rel = 1e-8;
    double near_zero_eps = 1e-3;
    bool compute_ks = true;
};

struct VerificationSummary {
    double max_dev_max = 0.0;   // max |lambda_max - d(c_n)|
    double max_dev_min = 0.0;   // max |lambda_min + d(c_n)|
    int total_outliers = 0;
    int min_zero_count = 0;
    double max_ks = 0.0;
    double mean_ks = 0.0;
    bool all_solved = true;
};

struct VerificationReport {
    SimulationConfig config;
    DistributionKind dist = DistributionKind::ComplexGaussian;
    std::uint64_t seed0 = 0;
    int reps = 0;
    double d_cn = 0.0;          // boundary at c_n = n/T
    VerificationOptions options;
    std::vector<RepRecord> records;

    VerificationSummary summary() const;
};

// One M_n(tau) build + eigensolve per rep; rep r uses seed0 + r. Records are
// deterministic in (config, dist, reps, seed0) and independent of the worker
// count. Solver failures are recorded per rep, not fatal.
VerificationReport verify_extremes(const SimulationConfig& config,
                                   DistributionKind dist, int reps,
                                   std::uint64_t seed0,
                                   const VerificationOptions& options = {});

void write_report_json(const VerificationReport& r, std::ostream& os);
void write_report_summary_csv(const VerificationReport& r, std::ostream& os);

struct DetectionReport {
    std::vector<int> counts;    // N(tau), tau = 0..tau_max
    int k_hat = 0;
    int q_hat = 0;
    double delta0 = 0.0;        // N(0) threshold: (1+sqrt c_n)^2 (1+delta0)
    double delta1 = 0.0;        // N(tau) threshold: |lambda| > d(c_n)+delta1
    double threshold0 = 0.0;
    double threshold_tau = 0.0;
};

// N(0) counts eigenvalues of Phi(0) above (1+sqrt c_n)^2 (1+delta0); for
// tau >= 1, N(tau) counts eigenvalues outside [-d(c_n)-delta1, d(c_n)+delta1].
// q_hat = largest lag with N > 0; k_hat = round(N(0)/(q_hat+1)).
DetectionReport detect_orders(const ObservationPanel& obs, int tau_max,
                              double delta0 = 0.15, double delta1 = 0.15);

void write_detection_json(const DetectionReport& r, std::ostream& os);

// Sup-distance between two step CDFs (lag-invariance diagnostics).
double esd_distance(const EmpiricalSpectralDistribution& a,
                    const EmpiricalSpectralDistribution& b);

// Run f(rep) for rep = 0..reps-1 on up to `threads` workers (0 = auto).
void parallel_reps(int reps, int threads, const std::function<void(int)>& f);

} // namespace lspec
