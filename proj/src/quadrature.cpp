// quadrature.cpp — Globally adaptive Gauss-Kronrod (7/15) for vector-valued integrands

#include "qcool/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qcool/errors.hpp"

namespace qcool::quad {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
using G7 = boost::math::quadrature::gauss<double, 7>;

struct Piece {
    double a, b;  // in the integration variable (t for the mapped tail)
    RVector value, error;
    double priority{0.0};
};

// Integrand expressed on the (possibly mapped) variable.
struct Mapped {
    const VecFn* f;
    bool tail{false};
    double origin{0.0}, scale{1.0};

    RVector operator()(double t) const {
        if (!tail) return (*f)(t);
        const double d = 1.0 - t;
        const double x = origin + scale * t / d;
        return (*f)(x) * (scale / (d * d));
    }
};

// One 15-point rule with the QUADPACK error heuristic applied per component.
void rule(const Mapped& g, Eigen::Index dim, Piece& p, int& evals) {
    const double c = 0.5 * (p.a + p.b), h = 0.5 * (p.b - p.a);
    const auto& x = GK::abscissa();
    const auto& wk = GK::weights();
    const auto& wg = G7::weights();

    std::vector<RVector> fp(x.size()), fm(x.size());
    fp[0] = g(c);
    for (std::size_t i = 1; i < x.size(); ++i) {
        fp[i] = g(c + h * x[i]);
        fm[i] = g(c - h * x[i]);
    }
    evals += static_cast<int>(2 * x.size() - 1);

    RVector kron = wk[0] * fp[0];
    RVector gauss = wg[0] * fp[0];
    RVector absint = wk[0] * fp[0].cwiseAbs();
    for (std::size_t i = 1; i < x.size(); ++i) {
        kron += wk[i] * (fp[i] + fm[i]);
        absint += wk[i] * (fp[i].cwiseAbs() + fm[i].cwiseAbs());
        if (i % 2 == 0) gauss += wg[i / 2] * (fp[i] + fm[i]);
    }
    const RVector mean = 0.5 * kron;
    RVector asc = wk[0] * (fp[0] - mean).cwiseAbs();
    for (std::size_t i = 1; i < x.size(); ++i) {
        asc += wk[i] * ((fp[i] - mean).cwiseAbs() + (fm[i] - mean).cwiseAbs());
    }

    p.value = h * kron;
    p.error.resize(dim);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double resasc = std::abs(h) * asc(k);
        const double resabs = std::abs(h) * absint(k);
        double err = std::abs(h * (kron(k) - gauss(k)));
        if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
        if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);
        if (!std::isfinite(p.value(k))) {
            throw AccuracyError("quadrature: integrand is not finite");
        }
        p.error(k) = err;
    }
}

} // namespace

Result integrate(const VecFn& f, Eigen::Index dim, double a, double b,
                 std::span<const double> breakpoints, const Options& opts) {
    Result res;
    res.value = RVector::Zero(dim);
    res.error = RVector::Zero(dim);
    if (!(b > a)) {
        if (b == a) {
            res.converged = true;
            return res;
        }
        throw InvalidInput("quadrature: upper limit below lower limit");
    }

    std::vector<double> cuts{a};
    for (double x : breakpoints)
        if (x > a && x < b && std::isfinite(x)) cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    const bool infinite = std::isinf(b);
    if (!infinite) cuts.push_back(b);

    std::vector<Piece> pieces;
    const Mapped finite_map{&f, false, 0.0, 1.0};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) pieces.push_back({cuts[i], cuts[i + 1], {}, {}, 0.0});
    // The tail [origin, inf) lives on t in [0, 1).
    const double origin = cuts.back();
    const double scale = std::max(1.0, std::abs(origin));
    const Mapped tail_map{&f, true, origin, scale};
    std::vector<bool> is_tail(pieces.size(), false);
    if (infinite) {
        pieces.push_back({0.0, 1.0, {}, {}, 0.0});
        is_tail.push_back(true);
    }

    struct Item {
        double priority;
        std::size_t idx;
        bool operator<(const Item& o) const { return priority < o.priority; }
    };

    std::vector<Piece> store;
    std::vector<bool> store_tail;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        rule(is_tail[i] ? tail_map : finite_map, dim, pieces[i], res.evaluations);
        store.push_back(pieces[i]);
        store_tail.push_back(is_tail[i]);
    }

    auto totals = [&]() {
        res.value.setZero();
        res.error.setZero();
        for (const auto& p : store) {
            res.value += p.value;
            res.error += p.error;
        }
    };
    auto tolerance = [&]() {
        RVector tol(dim);
        for (Eigen::Index k = 0; k < dim; ++k) tol(k) = std::max(opts.abs_tol, opts.rel_tol * std::abs(res.value(k)));
        return tol;
    };
    auto done = [&](const RVector& tol) { return (res.error.array() <= tol.array()).all(); };

    totals();
    RVector tol = tolerance();
    std::priority_queue<Item> heap;
    auto rebuild = [&]() {
        heap = {};
        for (std::size_t i = 0; i < store.size(); ++i) {
            store[i].priority = (store[i].error.array() / tol.array()).maxCoeff();
            heap.push({store[i].priority, i});
        }
    };
    rebuild();

    int since_rebuild = 0;
    while (!done(tol)) {
        if (static_cast<int>(store.size()) >= opts.max_intervals) break;
        const std::size_t idx = heap.top().idx;
        heap.pop();
        Piece left = store[idx], right = store[idx];
        const double mid = 0.5 * (store[idx].a + store[idx].b);
        if (!(mid > store[idx].a && mid < store[idx].b)) break; // interval exhausted
        left.b = mid;
        right.a = mid;
        const Mapped& m = store_tail[idx] ? tail_map : finite_map;
        rule(m, dim, left, res.evaluations);
        rule(m, dim, right, res.evaluations);
        res.value += left.value + right.value - store[idx].value;
        res.error += left.error + right.error - store[idx].error;
        store[idx] = left;
        store.push_back(right);
        store_tail.push_back(store_tail[idx]);
        left.priority = (left.error.array() / tol.array()).maxCoeff();
        right.priority = (right.error.array() / tol.array()).maxCoeff();
        store[idx].priority = left.priority;
        store.back().priority = right.priority;
        heap.push({left.priority, idx});
        heap.push({right.priority, store.size() - 1});
        if (++since_rebuild >= 64) {
            totals();
            tol = tolerance();
            rebuild();
            since_rebuild = 0;
        }
    }
    totals();
    tol = tolerance();
    res.converged = done(tol);
    res.intervals = static_cast<int>(store.size());
    return res;
}

double integrate_scalar(const std::function<double(double)>& f, double a, double b,
                        std::span<const double> breakpoints, const Options& opts, double* error) {
    const VecFn g = [&](double x) {
        RVector v(1);
        v(0) = f(x);
        return v;
    };
    const Result r = integrate(g, 1, a, b, breakpoints, opts);
    if (error) *error = r.error(0);
    if (!r.converged) throw AccuracyError("scalar quadrature did not converge");
    return r.value(0);
}

} // namespace qcool::quad
