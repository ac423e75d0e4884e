// quadrature.hpp — Globally adaptive Gauss-Kronrod (7/15) for vector-valued integrands

#pragma once

#include <functional>
#include <span>

#include "qcool/linalg.hpp"

namespace qcool::quad {

struct Options {
    double rel_tol{1e-8};
    double abs_tol{1e-14};
    int max_intervals{20000};
};

struct Result {
    RVector value;
    RVector error;
    int evaluations{0};
    int intervals{0};
    bool converged{false};
};

using VecFn = std::function<RVector(double)>;

// Integrates f: R -> R^dim over [a, b]; b may be +infinity, in which case the last
// piece [c, inf) is mapped through x = c + s t / (1 - t). Breakpoints inside (a, b) are
// honoured as interval boundaries. Convergence is component-wise:
// err_i <= max(abs_tol, rel_tol |I_i|).
Result integrate(const VecFn& f, Eigen::Index dim, double a, double b,
                 std::span<const double> breakpoints = {}, const Options& opts = {});

// Scalar convenience wrapper.
double integrate_scalar(const std::function<double(double)>& f, double a, double b,
                        std::span<const double> breakpoints = {}, const Options& opts = {},
                        double* error = nullptr);

} // namespace qcool::quad
