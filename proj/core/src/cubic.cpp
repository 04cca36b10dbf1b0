#include "lspec/cubic.hpp"

#include <cmath>

#include "lspec/errors.hpp"

namespace lspec {

namespace {

using cd = std::complex<double>;

cd cbrt_principal(cd w) {
    if (w == cd(0.0, 0.0)) return w;
    // keep a negative real input on the real axis
    if (w.imag() == 0.0 && w.real() < 0.0) return {-std::cbrt(-w.real()), 0.0};
    return std::pow(w, 1.0 / 3.0);
}

} // namespace

CubicRoots solve_cubic(cd a3, cd a2, cd a1, cd a0) {
    if (a3 == cd(0.0, 0.0)) throw Error("solve_cubic: leading coefficient is zero");

    const cd b = a2 / a3, c = a1 / a3, d = a0 / a3;

    // depressed form t^3 + p t + q with y = t - b/3
    const cd shift = b / 3.0;
    const cd p = c - b * b / 3.0;
    const cd q = (2.0 * b * b * b - 9.0 * b * c) / 27.0 + d;

    CubicRoots out{};
    const cd w(-0.5, 0.86602540378443864676);  // primitive cube root of unity

    if (p == cd(0.0, 0.0) && q == cd(0.0, 0.0)) {
        out.roots = {-shift, -shift, -shift};
    } else {
        const cd disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        cd u3 = -q / 2.0 + disc;
        const cd u3b = -q / 2.0 - disc;
        if (std::abs(u3b) > std::abs(u3)) u3 = u3b;  // avoid cancellation
        const cd u = cbrt_principal(u3);
        const cd v = (u == cd(0.0, 0.0)) ? cd(0.0, 0.0) : -p / (3.0 * u);
        const cd t0 = u + v;
        const cd t1 = u * w + v * std::conj(w);
        const cd t2 = u * std::conj(w) + v * w;
        out.roots = {t0 - shift, t1 - shift, t2 - shift};
    }

    // Newton polish against the original coefficients
    for (auto& r : out.roots) {
        for (int it = 0; it < 2; ++it) {
            const cd f = ((a3 * r + a2) * r + a1) * r + a0;
            const cd fp = (3.0 * a3 * r + 2.0 * a2) * r + a1;
            if (std::abs(fp) == 0.0) break;
            const cd step = f / fp;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            r -= step;
        }
    }

    for (int i = 0; i < 3; ++i)
        out.is_real[i] = std::fabs(out.roots[i].imag()) <= 1e-9 * (1.0 + std::abs(out.roots[i]));
    return out;
}

} // namespace lspec
