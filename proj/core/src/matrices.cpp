#include "lspec/matrices.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>

#include "lspec/rng.hpp"

namespace lspec {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

cplx draw_iid(const CounterRng& rng, DistributionKind dist, std::uint32_t hi,
              std::uint32_t lo) {
    switch (dist) {
        case DistributionKind::ComplexGaussian: {
            const auto [x, y] = rng.normal2(hi, lo);
            return {x * kInvSqrt2, y * kInvSqrt2};
        }
        case DistributionKind::RealGaussian: {
            const auto [x, y] = rng.normal2(hi, lo);
            (void)y;
            return {x, 0.0};
        }
        case DistributionKind::Rademacher:
            return {rng.sign(hi, lo), 0.0};
    }
    return {};
}

// (1/2T)(A B^* + B A^*) with A = cols [0,T), B = cols [tau, T+tau).
HermitianMatrix symmetrized_lag_product(int n, int T, int tau, int cols,
                                        const cplx* data) {
    if (tau < 0) throw DimensionError("tau must be >= 0");
    if (T + tau > cols)
        throw DimensionError("panel has " + std::to_string(cols) +
                             " columns; lag " + std::to_string(tau) +
                             " needs " + std::to_string(T + tau));

    // B(i,j) = sum_k A(i,k) conj(A(j,k+tau)), accumulated as rank-1 updates
    std::vector<double> bre(std::size_t(n) * n, 0.0), bim(std::size_t(n) * n, 0.0);
    for (int k = 0; k < T; ++k) {
        const cplx* u = data + std::size_t(k) * n;
        const cplx* v = data + std::size_t(k + tau) * n;
        for (int i = 0; i < n; ++i) {
            const double ur = u[i].real(), ui = u[i].imag();
            double* br = &bre[std::size_t(i) * n];
            double* bi = &bim[std::size_t(i) * n];
            for (int j = 0; j < n; ++j) {
                const double vr = v[j].real(), vi = -v[j].imag();
                br[j] += ur * vr - ui * vi;
                bi[j] += ur * vi + ui * vr;
            }
        }
    }

    HermitianMatrix m{n};
    const double t2 = 2.0 * T;  // divide, so the tau=0 path rounds like B/T
    for (int i = 0; i < n; ++i) {
        m(i, i) = cplx(2.0 * bre[std::size_t(i) * n + i] / t2, 0.0);
        for (int j = i + 1; j < n; ++j) {
            const double re = (bre[std::size_t(i) * n + j] + bre[std::size_t(j) * n + i]) / t2;
            const double im = (bim[std::size_t(i) * n + j] - bim[std::size_t(j) * n + i]) / t2;
            m(i, j) = cplx(re, im);
            m(j, i) = cplx(re, -im);
        }
    }
    return m;
}

} // namespace

HermitianMatrix build_m_tau(const NoisePanel& panel, int tau) {
    return symmetrized_lag_product(panel.rows, panel.config.T, tau, panel.cols,
                                   panel.data.data());
}

void FactorModelConfig::validate() const {
    base.validate();
    if (num_factors < 0) throw ConfigError("k must be >= 0");
    if (lag_order < 0) throw ConfigError("q must be >= 0");
    if (num_factors > 0) {
        if (int(loadings.size()) != lag_order + 1)
            throw ConfigError("need q+1 loading matrices");
        for (const auto& L : loadings)
            if (L.size() != std::size_t(base.n) * num_factors)
                throw ConfigError("loading matrix must be n x k");
    }
}

FactorModelConfig make_factor_config(const SimulationConfig& base, int k, int q,
                                     double signal_scale, std::uint64_t seed,
                                     bool equal_loadings) {
    base.validate();
    FactorModelConfig fc;
    fc.base = base;
    fc.num_factors = k;
    fc.lag_order = q;
    if (k > 0) {
        const CounterRng rng(seed, rngtag::kLoading);
        const double scale = signal_scale / std::sqrt(double(base.n));
        fc.loadings.resize(q + 1);
        for (int l = 0; l <= q; ++l) {
            auto& L = fc.loadings[l];
            L.resize(std::size_t(base.n) * k);
            if (equal_loadings && l > 0) {
                L = fc.loadings[0];
                continue;
            }
            for (int i = 0; i < base.n; ++i)
                for (int j = 0; j < k; ++j)
                    L[std::size_t(i) * k + j] =
                        scale * rng.normal2(std::uint32_t(l), std::uint32_t(i) * k + j).first;
        }
    }
    fc.validate();
    return fc;
}

ObservationPanel simulate_factor_panel(const FactorModelConfig& fc, std::uint64_t seed) {
    fc.validate();
    const int n = fc.base.n;
    const int cols = fc.base.T + fc.base.tau;
    const int k = fc.num_factors;
    const int q = fc.lag_order;

    ObservationPanel obs;
    obs.fc = fc;
    obs.seed = seed;
    obs.rows = n;
    obs.cols = cols;

    {
        NoisePanel noise = sample_panel(fc.base, fc.noise_dist, seed);
        obs.data = std::move(noise.data);
    }

    if (k > 0 && !fc.zero_factors) {
        // factor series F_s for s = 1-q .. T+tau, stored with offset q-1+s
        const int fcols = cols + q;
        std::vector<cplx> F(std::size_t(fcols) * k);
        const CounterRng rng(seed, rngtag::kFactor);
        for (int s = 0; s < fcols; ++s)
            for (int j = 0; j < k; ++j)
                F[std::size_t(s) * k + j] =
                    draw_iid(rng, fc.factor_dist, std::uint32_t(s), std::uint32_t(j));

        for (int t = 0; t < cols; ++t) {
            cplx* col = &obs.data[std::size_t(t) * n];
            for (int l = 0; l <= q; ++l) {
                // model time t+1, factor time (t+1)-l -> storage index t+q-l
                const cplx* f = &F[std::size_t(t + q - l) * k];
                const auto& L = fc.loadings[l];
                for (int i = 0; i < n; ++i) {
                    cplx acc = col[i];
                    const double* Li = &L[std::size_t(i) * k];
                    for (int j = 0; j < k; ++j)
                        acc += Li[j] * f[j];
                    col[i] = acc;
                }
            }
        }
    }
    return obs;
}

HermitianMatrix build_phi_tau(const ObservationPanel& obs, int tau) {
    return symmetrized_lag_product(obs.rows, obs.fc.base.T, tau, obs.cols,
                                   obs.data.data());
}

void write_matrix_binary(const HermitianMatrix& m, std::ostream& os) {
    os.write("LSPC", 4);
    const std::uint32_t version = 1, n = std::uint32_t(m.n);
    os.write(reinterpret_cast<const char*>(&version), 4);
    os.write(reinterpret_cast<const char*>(&n), 4);
    os.write(reinterpret_cast<const char*>(m.a.data()),
             std::streamsize(m.a.size() * sizeof(cplx)));
    if (!os) throw IoError("matrix binary: write failed");
}

HermitianMatrix read_matrix_binary(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "LSPC", 4) != 0)
        throw IoError("matrix binary: bad magic");
    std::uint32_t version = 0, n = 0;
    is.read(reinterpret_cast<char*>(&version), 4);
    is.read(reinterpret_cast<char*>(&n), 4);
    if (!is || version != 1) throw IoError("matrix binary: unsupported version");
    HermitianMatrix m{int(n)};
    is.read(reinterpret_cast<char*>(m.a.data()),
            std::streamsize(m.a.size() * sizeof(cplx)));
    if (!is) throw IoError("matrix binary: truncated payload");
    return m;
}

void write_matrix_csv(const HermitianMatrix& m, std::ostream& os) {
    char buf[96];
    for (int i = 0; i < m.n; ++i) {
        for (int j = 0; j < m.n; ++j) {
            const cplx& v = m(i, j);
            std::snprintf(buf, sizeof buf, "%s\"%.17g,%.17g\"", j ? "," : "",
                          v.real(), v.imag());
            os << buf;
        }
        os << '\n';
    }
}

} // namespace lspec
