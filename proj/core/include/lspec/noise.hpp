#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lspec/errors.hpp"

namespace lspec {

using cplx = std::complex<double>;

enum class DistributionKind { ComplexGaussian, RealGaussian, Rademacher };

std::string to_string(DistributionKind d);
DistributionKind distribution_from_string(const std::string& s);

struct SimulationConfig {
    int n = 0;    // dimension
    int T = 0;    // sample length
    int tau = 0;  // lag

    double ratio() const { return double(n) / double(T); }  // c_n = n/T

    // n >= 1, T >= 1, 0 <= tau < T
    void validate() const;
};

// n x (T+tau) panel of i.i.d. innovations; column k is e_k.
// Deterministic in (config, dist, seed), independent of thread count.
struct NoisePanel {
    SimulationConfig config;
    DistributionKind dist = DistributionKind::ComplexGaussian;
    std::uint64_t seed = 0;
    int rows = 0;
    int cols = 0;                     // T + tau
    std::vector<cplx> data;           // column-major

    cplx& at(int i, int t) { return data[std::size_t(t) * rows + i]; }
    const cplx& at(int i, int t) const { return data[std::size_t(t) * rows + i]; }
};

NoisePanel sample_panel(const SimulationConfig& config, DistributionKind dist,
                        std::uint64_t seed);

// Truncated population moments of the modulus-truncated entry
//   eps_hat = eps * 1{|eps| <= C} - mu_C.
// mu_C is identically zero for the three built-in symmetric distributions;
// sigma_C comes from the closed forms (error function for the gaussians,
// exact for rademacher).
double truncated_mean(DistributionKind dist, double C);
double truncated_sigma(DistributionKind dist, double C);

// Appendix-style per-entry map eps -> (eps 1{|eps|<=C} - mu_C)/sigma_C.
// Throws DegenerateTruncationError when sigma_C == 0.
NoisePanel preprocess(const NoisePanel& panel, double C);

// CSV with a one-line JSON header {"n","T","tau","dist","seed"}; each cell is
// a quoted "re,im" pair, cells comma-separated, one row per component i.
void write_panel_csv(const NoisePanel& panel, std::ostream& os);
NoisePanel read_panel_csv(std::istream& is);

} // namespace lspec
