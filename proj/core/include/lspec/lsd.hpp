#pragma once

#include <array>
#include <complex>
#include <vector>

#include "lspec/cubic.hpp"

namespace lspec {

// Support boundary d(c): (1-c) sqrt(1+y1) / (y1 - 1) with y1 the real root of
// ((1-c)^2 - 1) y^3 + y^2 + y - 1 = 0 in (1, inf) for c < 1 and (0, 1) for
// c > 1; exactly 2 at c = 1.
double lsd_boundary(double c);
double lsd_y1(double c);                 // c != 1
double lsd_point_mass(double c);         // max(0, 1 - 1/c)

// Largest real root of y^3 - ((1-c)^2 - x^2)/x^2 y^2 - 4/x^2 y - 4/x^2 = 0.
double y0_at(double x, double c);

// Same cubic with complex z^2; root of largest modulus among those with
// 1 + y bounded away from zero (the formulas below are singular at y = -1,
// which occurs as a spurious factor when c = 1).
std::complex<double> y0_complex(std::complex<double> z, double c);

// The four algebraic branches of the Stieltjes quartic
//   (1 - c^2 m^2)(c + c z m - 1)^2 = 1
// at a point z in the upper half-plane, with per-branch residuals, the
// pointwise probability-measure consistency flags, and the resolved branch.
struct StieltjesEvaluation {
    std::complex<double> z;
    double c = 0.0;
    std::array<std::complex<double>, 4> m{};
    std::array<double, 4> residual{};
    std::array<bool, 4> admissible{};  // pointwise filter (see select_branch)
    int selected = -1;
    bool continuation_used = false;
};

StieltjesEvaluation stieltjes_roots(std::complex<double> z, double c);

// Returns the resolved branch value; throws BranchAmbiguityError when the
// evaluation could not isolate a single branch.
std::complex<double> select_branch(const StieltjesEvaluation& ev, double c);

class LsdModel {
  public:
    explicit LsdModel(double c);

    double ratio() const { return c_; }
    double boundary() const { return d_; }
    double point_mass() const { return atom_; }
    double half_ac_mass() const { return half_; }  // integral of phi over [0, d]

    // Density phi_c; +infinity sentinel at x == 0 (integrable singularity for
    // c = 1, removable for c != 1 but the defining cubic needs x != 0).
    double density(double x) const;

    double cdf(double x) const;       // F_c(x), quadrature error <= 1e-7
    double cdf_left(double x) const;  // F_c(x^-)

    std::complex<double> stieltjes(std::complex<double> z) const;

  private:
    double c_, d_, atom_;
    double half_;
    std::vector<double> anchor_t_;    // sqrt-substituted grid over [0, sqrt(d)]
    std::vector<double> anchor_h_;    // cumulative mass at anchor_t_[k]^2

    double mass_to(double u) const;   // integral of phi over [0, min(u, d)]
};

// Marchenko-Pastur reference (variance 1, ratio c): density on
// [(1-sqrt c)^2, (1+sqrt c)^2], atom max(0, 1-1/c) at the origin.
double mp_density(double x, double c);
double mp_upper_edge(double c);

struct MarchenkoPastur {
    explicit MarchenkoPastur(double ratio);
    double c;
    double atom;
    double cdf(double x) const;
    double cdf_left(double x) const;
};

namespace detail {
// Literal density formula (y0^2/(1+y0) - ((1-c)/|x| + 1/sqrt(1+y0))^2 under
// the square root); retained as a cross-check for the stable rewrite.
double density_eq11(double x, double c);
std::complex<double> sqrt_upper(std::complex<double> w);  // Im >= 0 branch
} // namespace detail

} // namespace lspec
