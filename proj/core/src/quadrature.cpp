#include "lspec/quadrature.hpp"

#include <cmath>

namespace lspec {

namespace {

// G7K15 nodes/weights (QUADPACK dqk15)
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename V, typename F>
void gk15(const F& f, double a, double b, V& kronrod, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const V fc = f(mid);
    V gauss = kWg[3] * fc;
    V kron = kWgk[7] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const V s = f(mid - dx) + f(mid + dx);
        kron += kWgk[i] * s;
        if (i % 2 == 1) gauss += kWg[i / 2] * s;
    }
    kronrod = half * kron;
    err = std::abs(half * (kron - gauss));
}

template <typename V, typename F>
V adaptive(const F& f, double a, double b, double tol, int depth) {
    V est;
    double err;
    gk15<V>(f, a, b, est, err);
    if (err <= tol || depth <= 0 || !(b - a > 0.0)) return est;
    const double mid = 0.5 * (a + b);
    return adaptive<V>(f, a, mid, 0.5 * tol, depth - 1) +
           adaptive<V>(f, mid, b, 0.5 * tol, depth - 1);
}

} // namespace

double gk_integrate(const std::function<double(double)>& f, double a, double b,
                    double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    if (a > b) return -gk_integrate(f, b, a, abs_tol, max_depth);
    return adaptive<double>(f, a, b, abs_tol, max_depth);
}

std::complex<double> gk_integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double abs_tol, int max_depth) {
    if (a == b) return {0.0, 0.0};
    if (a > b) return -gk_integrate_complex(f, b, a, abs_tol, max_depth);
    return adaptive<std::complex<double>>(f, a, b, abs_tol, max_depth);
}

} // namespace lspec
