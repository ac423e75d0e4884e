// test_floquet.cpp — Perturbative and harmonic-balance Floquet coefficients, stability, time domain

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qcool/errors.hpp"
#include "qcool/floquet.hpp"

using namespace qcool;
using namespace qcool::network;
using namespace qcool::floquet;

namespace {

NetworkSpec oscillator(double w0sq, double v = 0.0, double omega_d = 0.0) {
    NetworkInput in;
    in.V0 = RMatrix::Constant(1, 1, w0sq);
    if (v != 0.0) {
        in.Vk[1] = CMatrix::Constant(1, 1, cplx(v, 0.0));
        in.omega_d = omega_d;
    }
    return build_network(in);
}

DampingBackend markov(const NetworkSpec& net, double gamma) {
    DampingBackend d;
    d.kind = DampingKind::markovian_ohmic;
    d.Gamma = RMatrix::Identity(net.n_nodes, net.n_nodes) * gamma;
    return d;
}

NetworkSpec pair(double v, double omega_d) {
    NetworkInput in;
    in.V0.resize(2, 2);
    in.V0 << 1.0, 0.3, 0.3, 1.6;
    CMatrix v1 = CMatrix::Zero(2, 2);
    v1(0, 1) = v1(1, 0) = v;
    v1(0, 0) = 0.5 * v;
    in.Vk[1] = v1;
    in.omega_d = omega_d;
    return build_network(in);
}

double rel(const CMatrix& a, const CMatrix& b) { return (a - b).norm() / b.norm(); }

} // namespace

TEST_CASE("undriven propagator") {
    const auto net = oscillator(1.0);
    const auto ph = make_phenomenological_backend(net, RVector::Constant(1, 0.1), RVector::Constant(1, 1.0));
    CHECK(undriven_propagator(net, ph, 0.0)(0, 0).real() == doctest::Approx(-1.0 / 1.01).epsilon(1e-14));
    CHECK(undriven_propagator(net, ph, 0.0)(0, 0).real() == doctest::Approx(-0.990099).epsilon(1e-6));

    const auto lossless = markov(net, 0.0);
    const CMatrix g = undriven_propagator(net, lossless, 0.5);
    CHECK(g(0, 0).real() == doctest::Approx(1.0 / 0.75).epsilon(1e-14));
    CHECK(std::abs(g(0, 0).imag()) < 1e-15);
    CHECK_THROWS_AS(undriven_propagator(net, lossless, 1.0), InstabilityError);

    const auto lossy = markov(net, 0.1);
    const double big = std::abs(undriven_propagator(net, lossy, 1e3)(0, 0));
    const double bigger = std::abs(undriven_propagator(net, lossy, 2e3)(0, 0));
    CHECK(big / bigger == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("perturbative coefficients") {
    const double v = 1e-3;
    const auto net = oscillator(1.0, v, 2.0);
    const auto ph = make_phenomenological_backend(net, RVector::Constant(1, 0.01), RVector::Constant(1, 1.0));
    auto g = [](double w) { return 1.0 / ((cplx(w, -0.01)) * (cplx(w, -0.01)) - 1.0); };

    const auto r = floquet_perturbative(net, ph, 1.0);
    CHECK(r.weak_drive);
    CHECK(std::abs(r.coeffs.A(0)(0, 0) - g(1.0)) < 1e-12 * std::abs(g(1.0)));
    // the drive enters the stiffness as +V, so the first-order correction carries a minus sign
    CHECK(std::abs(r.coeffs.A(1)(0, 0) - (-g(3.0) * v * g(1.0))) < 1e-12 * std::abs(g(3.0) * v * g(1.0)));
    CHECK(std::abs(r.coeffs.A(-1)(0, 0) - (-g(-1.0) * v * g(1.0))) < 1e-12 * std::abs(g(-1.0) * v * g(1.0)));

    const auto r2 = floquet_perturbative(oscillator(1.0, 3.0 * v, 2.0), ph, 1.0);
    CHECK(rel(r2.coeffs.A(1), 3.0 * r.coeffs.A(1)) < 1e-13);

    const auto undriven = floquet_perturbative(oscillator(1.0), ph, 1.0);
    CHECK(undriven.coeffs.K == 0);
}

TEST_CASE("harmonic balance: undriven limit and weak-drive agreement") {
    const auto st = oscillator(1.0);
    const auto d0 = markov(st, 0.05);
    const auto c0 = floquet_harmonic_balance(st, d0, 0.7, 0);
    CHECK(rel(c0.A(0), undriven_propagator(st, d0, 0.7)) < 1e-14);

    // ||V_1|| / ||V_0|| about 1e-3, off the narrow resonances
    const auto net = pair(1e-3, 0.7);
    const auto d = markov(net, 0.2);
    for (double w : {0.1, 0.5, 0.95, 1.3, 2.0}) {
        const auto hb = floquet_harmonic_balance(net, d, w, 3);
        const auto pt = floquet_perturbative(net, d, w);
        CHECK(rel(hb.A(1), pt.coeffs.A(1)) < 1e-5);
        CHECK(rel(hb.A(-1), pt.coeffs.A(-1)) < 1e-5);
        const auto hb5 = floquet_harmonic_balance(net, d, w, 5);
        CHECK((hb5.A(1) - hb.A(1)).norm() < 1e-8 * hb.A(1).norm());
    }
}

TEST_CASE("harmonic balance deviation from first order is quadratic in the drive") {
    const double w = 0.8;
    std::vector<double> dev;
    for (double v : {1e-2, 2e-2, 4e-2}) {
        const auto net = pair(v, 0.7);
        const auto d = markov(net, 0.05);
        dev.push_back((floquet_harmonic_balance(net, d, w, 6).A(0) - undriven_propagator(net, d, w)).norm());
    }
    CHECK(dev[1] / dev[0] == doctest::Approx(4.0).epsilon(0.02));
    CHECK(dev[2] / dev[1] == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("reciprocity for time-reversal-invariant drives") {
    const auto net = pair(0.05, 0.7);
    const auto d = markov(net, 0.05);
    const int K = 6;
    for (double w : {0.2, 0.9, 1.4}) {
        const auto c = floquet_harmonic_balance(net, d, w, K);
        CHECK((c.A(0) - c.A(0).transpose()).norm() < 1e-8 * c.A(0).norm());
        for (int k : {1, 2}) {
            const auto s = floquet_harmonic_balance(net, d, w + k * net.omega_d, K);
            CHECK((c.A(k).transpose() - s.A(-k)).norm() < 1e-6 * c.A(k).norm());
        }
    }
}

TEST_CASE("engine chooses a converged truncation order") {
    FloquetEngine e(pair(0.05, 0.7), markov(pair(0.05, 0.7), 0.05));
    CHECK(e.K() >= 3);
    CHECK(e.K_converged());
    const auto res = e.resonances();
    CHECK(std::is_sorted(res.begin(), res.end()));
    const auto grid = frequency_grid(e, 0.0, 5.0, 101, 10);
    CHECK(std::is_sorted(grid.begin(), grid.end()));
    CHECK(std::adjacent_find(grid.begin(), grid.end()) == grid.end());

    FloquetEngine still(oscillator(1.0), markov(oscillator(1.0), 0.1));
    CHECK(still.K() == 0);
}

TEST_CASE("grid solve is independent of thread count") {
    FloquetEngine e(pair(0.05, 0.7), markov(pair(0.05, 0.7), 0.05));
    const auto grid = frequency_grid(e, 0.0, 4.0, 200, 10);
    const auto a = solve_on_grid(e, grid, 1);
    const auto b = solve_on_grid(e, grid, 4);
    CHECK(a.grid == b.grid);
    for (std::size_t i = 0; i < a.grid.size(); i += 17) CHECK((a.A(1, i) - b.A(1, i)).norm() == 0.0);
}

TEST_CASE("stability_check") {
    const auto net = oscillator(1.0);
    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i) grid.push_back(0.005 * i);
    CHECK(stability_check(net, markov(net, 0.1), grid, 0).stable);

    const auto undamped = stability_check(net, markov(net, 0.0), grid, 0);
    CHECK_FALSE(undamped.stable);
    CHECK(undamped.real_axis_pole);
    CHECK(undamped.worst_omega == doctest::Approx(1.0));

    // parametric resonance: drive at twice the mode frequency, growth v/2 exceeds damping gamma/2
    const auto para = oscillator(1.0, 0.1, 2.0);
    const auto rep = stability_check(para, markov(para, 0.01), grid, 6);
    CHECK_FALSE(rep.stable);
    CHECK(rep.monodromy_radius > 1.0);
    const auto calm = stability_check(para, markov(para, 0.5), grid, 6);
    CHECK(calm.stable);
}

TEST_CASE("time-domain reconstruction of the undriven Green's function") {
    const auto net = oscillator(1.0);
    const auto d = markov(net, 0.2);
    FloquetEngine e(net, d);
    const auto sol = solve_on_grid(e, frequency_grid(e, -100.0, 100.0, 40001, 20), 2);

    const double wt = std::sqrt(1.0 - 0.01);
    const double oracle = std::exp(-0.1) * std::sin(wt) / wt;
    CHECK(oracle == doctest::Approx(0.762999).epsilon(5e-4));
    const auto g1 = greens_time_domain(sol, 1.0, 0.0);
    CHECK(g1.coverage_ok);
    CHECK(g1.G(0, 0) == doctest::Approx(oracle).epsilon(1e-4));
    CHECK(std::abs(greens_time_domain(sol, 2.0, 2.0).G(0, 0)) < 1e-4);
    const double h = 1e-3;
    // one-sided: G has a kink at equal times
    const double deriv = (greens_time_domain(sol, 2.0 * h, 0.0).G(0, 0) - greens_time_domain(sol, h, 0.0).G(0, 0)) / h;
    CHECK(deriv == doctest::Approx(1.0).epsilon(2e-3));
    // causality
    CHECK(std::abs(greens_time_domain(sol, 0.0, 1.0).G(0, 0)) < 1e-4);
}

TEST_CASE("harmonic balance input checks") {
    const auto net = pair(0.05, 0.7);
    CHECK_THROWS_AS(floquet_harmonic_balance(net, markov(net, 0.05), 0.5, 0), InvalidInput);
    CHECK_THROWS_AS(floquet_harmonic_balance(net, markov(net, 0.05), 0.5, 26), InvalidInput);
}
