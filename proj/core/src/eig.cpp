#include "lspec/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lspec/errors.hpp"

namespace lspec {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

Tridiagonal householder_tridiagonalize(const HermitianMatrix& m) {
    const int n = m.n;
    Tridiagonal t;
    t.diag.assign(n, 0.0);
    t.sub.assign(std::max(n - 1, 0), 0.0);
    if (n == 0) return t;
    if (n == 1) {
        t.diag[0] = m(0, 0).real();
        return t;
    }

    // work on split re/im copies; row i holds the Householder vector u
    std::vector<double> ar(m.a.size()), ai(m.a.size());
    for (std::size_t k = 0; k < m.a.size(); ++k) {
        ar[k] = m.a[k].real();
        ai[k] = m.a[k].imag();
    }
    auto re = [&](int i, int j) -> double& { return ar[std::size_t(i) * n + j]; };
    auto im = [&](int i, int j) -> double& { return ai[std::size_t(i) * n + j]; };

    std::vector<double> pr(n), pi(n);  // p = A u / h, then q

    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double scale = 0.0;
        for (int k = 0; k <= l; ++k) scale += std::fabs(re(i, k)) + std::fabs(im(i, k));
        if (scale == 0.0) {
            t.sub[l] = 0.0;
            t.diag[i] = re(i, i);
            continue;
        }

        double h = 0.0;
        for (int k = 0; k <= l; ++k) {
            re(i, k) /= scale;
            im(i, k) /= scale;
            h += re(i, k) * re(i, k) + im(i, k) * im(i, k);
        }
        const double g = std::sqrt(h);
        t.sub[l] = scale * g;

        const double f = std::hypot(re(i, l), im(i, l));
        if (f != 0.0) {
            // grow the pivot entry along its own phase
            const double fac = 1.0 + g / f;
            re(i, l) *= fac;
            im(i, l) *= fac;
            h += f * g;
        } else {
            re(i, l) = g;
        }

        if (h == 0.0) {
            t.diag[i] = re(i, i);
            continue;
        }

        // u_k = conj(A(i,k)) for k = 0..l; p = A u / h over the leading block
        for (int j = 0; j <= l; ++j) {
            double sr = 0.0, si = 0.0;
            const double* rj = &ar[std::size_t(j) * n];
            const double* ij = &ai[std::size_t(j) * n];
            const double* ri = &ar[std::size_t(i) * n];
            const double* ii = &ai[std::size_t(i) * n];
            for (int k = 0; k <= l; ++k) {
                // A(j,k) * conj(A(i,k))
                sr += rj[k] * ri[k] + ij[k] * ii[k];
                si += ij[k] * ri[k] - rj[k] * ii[k];
            }
            pr[j] = sr / h;
            pi[j] = si / h;
        }

        // K = (u^* p) / (2h); u^*_k = A(i,k)
        double kr = 0.0, ki = 0.0;
        for (int k = 0; k <= l; ++k) {
            kr += re(i, k) * pr[k] - im(i, k) * pi[k];
            ki += re(i, k) * pi[k] + im(i, k) * pr[k];
        }
        kr /= 2.0 * h;
        ki /= 2.0 * h;

        // q = p - K u  (u_k = conj(A(i,k)))
        for (int k = 0; k <= l; ++k) {
            const double ur = re(i, k), ui = -im(i, k);
            pr[k] -= kr * ur - ki * ui;
            pi[k] -= kr * ui + ki * ur;
        }

        // A <- A - q u^* - u q^*, Hermitian rank-2 update of the leading block
        for (int j = 0; j <= l; ++j) {
            const double uj_r = re(i, j), uj_i = -im(i, j);
            const double qj_r = pr[j], qj_i = pi[j];
            double* rj = &ar[std::size_t(j) * n];
            double* ij = &ai[std::size_t(j) * n];
            const double* ri = &ar[std::size_t(i) * n];
            const double* ii = &ai[std::size_t(i) * n];
            for (int k = 0; k <= l; ++k) {
                const double uk_r = ri[k], uk_i = -ii[k];   // u_k
                const double qk_r = pr[k], qk_i = pi[k];
                // q_j conj(u_k) + u_j conj(q_k)
                rj[k] -= qj_r * uk_r + qj_i * uk_i + uj_r * qk_r + uj_i * qk_i;
                ij[k] -= qj_i * uk_r - qj_r * uk_i + uj_i * qk_r - uj_r * qk_i;
            }
        }
        t.diag[i] = re(i, i);
    }
    t.diag[0] = re(0, 0);
    return t;
}

std::vector<double> ql_eigenvalues(Tridiagonal t, int max_sweeps) {
    const int n = int(t.diag.size());
    auto& d = t.diag;
    std::vector<double> e(n, 0.0);  // e[i] couples (i, i+1); e[n-1] spare
    for (int i = 0; i + 1 < n; ++i) e[i] = t.sub[i];

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int mdx;
        do {
            for (mdx = l; mdx < n - 1; ++mdx) {
                const double dd = std::fabs(d[mdx]) + std::fabs(d[mdx + 1]);
                if (std::fabs(e[mdx]) <= kEps * dd) break;
            }
            if (mdx != l) {
                if (iter++ == max_sweeps)
                    throw SolverFailure("QL sweep limit exceeded", iter);
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[mdx] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = mdx - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[mdx] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[mdx] = 0.0;
            }
        } while (mdx != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

Spectrum hermitian_eigenvalues(const HermitianMatrix& m) {
    Spectrum s;
    s.values = ql_eigenvalues(householder_tridiagonalize(m));
    return s;
}

EmpiricalSpectralDistribution::EmpiricalSpectralDistribution(std::vector<double> v)
    : values_(std::move(v)) {
    if (values_.empty()) throw EmptyInputError("esd: empty spectrum");
    std::sort(values_.begin(), values_.end());
}

double EmpiricalSpectralDistribution::operator()(double x) const {
    const auto it = std::upper_bound(values_.begin(), values_.end(), x);
    return double(it - values_.begin()) / double(values_.size());
}

double EmpiricalSpectralDistribution::left(double x) const {
    const auto it = std::lower_bound(values_.begin(), values_.end(), x);
    return double(it - values_.begin()) / double(values_.size());
}

EmpiricalSpectralDistribution esd(const Spectrum& s) {
    return EmpiricalSpectralDistribution(s.values);
}

std::pair<double, double> extreme(const Spectrum& s) {
    if (s.values.empty()) throw EmptyInputError("extreme: empty spectrum");
    return {s.values.front(), s.values.back()};
}

namespace {

// #{eigenvalues of T < x} via the Sturm sign count
int sturm_count(const Tridiagonal& t, double x) {
    const int n = int(t.diag.size());
    int count = 0;
    double q = t.diag[0] - x;
    if (q < 0.0) ++count;
    for (int i = 1; i < n; ++i) {
        double denom = q;
        if (denom == 0.0) denom = kEps * (std::fabs(t.sub[i - 1]) + kEps);
        q = t.diag[i] - x - t.sub[i - 1] * t.sub[i - 1] / denom;
        if (q < 0.0) ++count;
    }
    return count;
}

} // namespace

std::vector<double> sturm_bisection_eigenvalues(const Tridiagonal& t, double abs_tol) {
    const int n = int(t.diag.size());
    // Gershgorin bounds
    double lo = t.diag[0], hi = t.diag[0];
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::fabs(t.sub[i - 1]);
        if (i + 1 < n) r += std::fabs(t.sub[i]);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
    lo -= abs_tol;
    hi += abs_tol;

    std::vector<double> ev(n);
    for (int k = 0; k < n; ++k) {
        double a = lo, b = hi;
        // smallest x with sturm_count(x) >= k+1
        while (b - a > abs_tol * (1.0 + std::fabs(a) + std::fabs(b))) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(t, mid) >= k + 1)
                b = mid;
            else
                a = mid;
        }
        ev[k] = 0.5 * (a + b);
    }
    return ev;
}

} // namespace lspec
