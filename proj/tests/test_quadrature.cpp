// test_quadrature.cpp — Vector adaptive Gauss-Kronrod integrator

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "qcool/quadrature.hpp"

using namespace qcool;

TEST_CASE("polynomials are exact on one panel") {
    const auto r = quad::integrate([](double x) { RVector v(2); v << x * x * x, 1.0; return v; }, 2, -1.0, 2.0);
    CHECK(r.converged);
    CHECK(r.value(0) == doctest::Approx(15.0 / 4.0).epsilon(1e-14));
    CHECK(r.value(1) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("semi-infinite integrals") {
    const double inf = std::numeric_limits<double>::infinity();
    const double lorentz = quad::integrate_scalar([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, inf);
    CHECK(lorentz == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-9));
    const double gauss = quad::integrate_scalar([](double x) { return std::exp(-x * x); }, 0.0, inf);
    CHECK(gauss == doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-9));
    const double bose = quad::integrate_scalar([](double x) { return x * x * x / std::expm1(x); }, 0.0, inf);
    CHECK(bose == doctest::Approx(std::pow(std::numbers::pi, 4) / 15.0).epsilon(1e-9));
}

TEST_CASE("narrow resonances need breakpoints or adaptivity") {
    // width 1e-6 Lorentzian centred at 3: integral over [0, 10] is (atan(7/g) + atan(3/g)) / g
    const double g = 1e-6;
    auto f = [g](double x) { return 1.0 / ((x - 3.0) * (x - 3.0) + g * g); };
    const double exact = (std::atan(7.0 / g) + std::atan(3.0 / g)) / g;
    const std::vector<double> bp{3.0};
    double err = 0.0;
    const double with_bp = quad::integrate_scalar(f, 0.0, 10.0, bp, {}, &err);
    CHECK(with_bp == doctest::Approx(exact).epsilon(1e-8));
    CHECK(err <= 1e-8 * exact);
}

TEST_CASE("components converge independently") {
    auto f = [](double x) {
        RVector v(3);
        v << std::sin(x), 1e-12 * std::cos(x), std::exp(-x);
        return v;
    };
    const auto r = quad::integrate(f, 3, 0.0, std::numbers::pi);
    CHECK(r.converged);
    CHECK(r.value(0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(r.value(1)) < 1e-20);
    CHECK(r.value(2) == doctest::Approx(1.0 - std::exp(-std::numbers::pi)).epsilon(1e-12));
    CHECK(r.evaluations > 0);
}

TEST_CASE("integrable endpoint singularity") {
    const double v = quad::integrate_scalar([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-7));
    const double l = quad::integrate_scalar([](double x) { return std::log(x); }, 0.0, 1.0);
    CHECK(l == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("non-convergence is reported") {
    quad::Options o;
    o.max_intervals = 3;
    o.rel_tol = 1e-14;
    const auto r = quad::integrate([](double x) { RVector v(1); v << std::sin(200.0 * x) * std::sin(200.0 * x); return v; },
                                   1, 0.0, 50.0, {}, o);
    CHECK_FALSE(r.converged);
}
