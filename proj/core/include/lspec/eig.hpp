#pragma once

#include <utility>
#include <vector>

#include "lspec/matrices.hpp"

namespace lspec {

struct Spectrum {
    std::vector<double> values;  // ascending, all finite
};

// Step CDF F_n(x) = (1/n) #{lambda_j <= x}.
class EmpiricalSpectralDistribution {
  public:
    explicit EmpiricalSpectralDistribution(std::vector<double> sorted_values);

    double operator()(double x) const;   // right-continuous value
    double left(double x) const;         // left limit F_n(x^-)
    const std::vector<double>& values() const { return values_; }
    int size() const { return int(values_.size()); }

  private:
    std::vector<double> values_;
};

// Real symmetric tridiagonal form: diag[0..n-1], sub[0..n-2].
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> sub;
};

// Unitary Householder reduction of a complex Hermitian matrix to real
// symmetric tridiagonal form (eigenvalues preserved; phases folded away).
Tridiagonal householder_tridiagonalize(const HermitianMatrix& m);

// Implicit-shift QL with Wilkinson shifts, eigenvalues only.
// Throws SolverFailure after `max_sweeps` sweeps on one eigenvalue.
std::vector<double> ql_eigenvalues(Tridiagonal t, int max_sweeps = 50);

// All n eigenvalues, ascending.
Spectrum hermitian_eigenvalues(const HermitianMatrix& m);

EmpiricalSpectralDistribution esd(const Spectrum& s);

std::pair<double, double> extreme(const Spectrum& s);  // (min, max)

// Slow verification oracle: bisection on the Sturm sign-count of the
// tridiagonal form. Independent of the QL path.
std::vector<double> sturm_bisection_eigenvalues(const Tridiagonal& t,
                                                double abs_tol = 1e-12);

} // namespace lspec
