#pragma once

#include <complex>
#include <functional>

namespace lspec {

// Adaptive Gauss-Kronrod 7-15 with bisection to an absolute tolerance.
// Panels that still miss the local tolerance at `max_depth` contribute their
// Kronrod estimate.
double gk_integrate(const std::function<double(double)>& f, double a, double b,
                    double abs_tol, int max_depth = 48);

std::complex<double> gk_integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double abs_tol, int max_depth = 48);

} // namespace lspec
