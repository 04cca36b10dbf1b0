#pragma once

#include <array>
#include <complex>

namespace lspec {

struct CubicRoots {
    std::array<std::complex<double>, 3> roots;
    std::array<bool, 3> is_real;  // |Im| <= 1e-9 (1 + |root|)
};

// Roots of a3 y^3 + a2 y^2 + a1 y + a0 = 0 by Cardano in complex arithmetic,
// Newton-polished. Throws Error when a3 == 0.
CubicRoots solve_cubic(std::complex<double> a3, std::complex<double> a2,
                       std::complex<double> a1, std::complex<double> a0);

} // namespace lspec
