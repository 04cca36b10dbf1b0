#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lspec/noise.hpp"

namespace lspec {

// Dense complex Hermitian matrix; symmetrized construction keeps
// a(i,j) == conj(a(j,i)) exact (no post-hoc correction).
struct HermitianMatrix {
    int n = 0;
    std::vector<cplx> a;  // row-major n*n

    explicit HermitianMatrix(int order = 0)
        : n(order), a(std::size_t(order) * order) {}

    cplx& operator()(int i, int j) { return a[std::size_t(i) * n + j]; }
    const cplx& operator()(int i, int j) const { return a[std::size_t(i) * n + j]; }
};

// M_n(tau) = (1/2T)(E E_tau^* + E_tau E^*) with E = columns 1..T,
// E_tau = columns 1+tau..T+tau of the panel.
HermitianMatrix build_m_tau(const NoisePanel& panel, int tau);

// Dynamic k-factor model with lag q:
//   R_t = sum_{i=0..q} Lambda_i F_{t-i} + e_t,  t = 1..T+tau.
struct FactorModelConfig {
    SimulationConfig base;                       // n, T, tau = max lag to build
    int num_factors = 0;                         // k
    int lag_order = 0;                           // q (ignored when k == 0)
    std::vector<std::vector<double>> loadings;   // q+1 matrices, n*k row-major
    DistributionKind factor_dist = DistributionKind::ComplexGaussian;
    DistributionKind noise_dist = DistributionKind::ComplexGaussian;
    bool zero_factors = false;                   // test hook: force F_t = 0

    void validate() const;
};

// Loadings with i.i.d. N(0, scale^2/n) entries, drawn independently per lag,
// so each factor column carries squared norm ~ scale^2.
FactorModelConfig make_factor_config(const SimulationConfig& base, int k, int q,
                                     double signal_scale, std::uint64_t seed,
                                     bool equal_loadings = false);

struct ObservationPanel {
    FactorModelConfig fc;
    std::uint64_t seed = 0;
    int rows = 0;
    int cols = 0;                   // T + base.tau
    std::vector<cplx> data;         // column-major

    cplx& at(int i, int t) { return data[std::size_t(t) * rows + i]; }
    const cplx& at(int i, int t) const { return data[std::size_t(t) * rows + i]; }
};

// Pre-sample factors F_0, F_-1, ... are drawn, not zeroed, so columns are
// stationary from t = 1.
ObservationPanel simulate_factor_panel(const FactorModelConfig& fc, std::uint64_t seed);

// Phi_n(tau) built from the observation panel, same symmetrization as M_n.
HermitianMatrix build_phi_tau(const ObservationPanel& obs, int tau);

// Binary format: magic "LSPC", u32 version, u32 n, then row-major
// (re, im) float64 pairs in native byte order.
void write_matrix_binary(const HermitianMatrix& m, std::ostream& os);
HermitianMatrix read_matrix_binary(std::istream& is);
void write_matrix_csv(const HermitianMatrix& m, std::ostream& os);

} // namespace lspec
