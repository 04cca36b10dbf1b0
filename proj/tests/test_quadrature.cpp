#include <doctest.h>

#include <cmath>
#include <complex>

#include "lspec/quadrature.hpp"

using namespace lspec;

TEST_CASE("polynomials are exact") {
    const double v = gk_integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
    CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    const double w = gk_integrate([](double x) { return x * x * x - 2.0 * x; }, -1.0, 3.0, 1e-12);
    CHECK(w == doctest::Approx(20.0 - 8.0).epsilon(1e-13));
}

TEST_CASE("sin over [0, pi]") {
    const double v = gk_integrate([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("log singularity at the left endpoint") {
    const double v = gk_integrate([](double x) { return std::log(x); }, 0.0, 1.0, 1e-10);
    CHECK(v == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("sqrt-singular integrand via substitution pattern") {
    // int_0^1 x^{-1/2} dx = 2, computed as int_0^1 2 dt after x = t^2
    const double direct = gk_integrate(
        [](double t) { return 2.0 * t / std::sqrt(t * t); }, 0.0, 1.0, 1e-10);
    CHECK(direct == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("orientation flip negates") {
    const auto f = [](double x) { return std::exp(-x); };
    const double a = gk_integrate(f, 0.0, 2.0, 1e-12);
    const double b = gk_integrate(f, 2.0, 0.0, 1e-12);
    CHECK(a == doctest::Approx(-b).epsilon(1e-14));
}

TEST_CASE("complex-valued integrand") {
    // int_0^1 e^{ix} dx = sin(1) + i(1 - cos(1))
    const auto v = gk_integrate_complex(
        [](double x) { return std::complex<double>(std::cos(x), std::sin(x)); },
        0.0, 1.0, 1e-12);
    CHECK(v.real() == doctest::Approx(std::sin(1.0)).epsilon(1e-13));
    CHECK(v.imag() == doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-13));
}

TEST_CASE("oscillatory integrand needs adaptivity") {
    const double v = gk_integrate([](double x) { return std::sin(50.0 * x); },
                                  0.0, M_PI, 1e-11);
    const double exact = (1.0 - std::cos(50.0 * M_PI)) / 50.0;
    CHECK(v == doctest::Approx(exact).epsilon(1e-9));
}
