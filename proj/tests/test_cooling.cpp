// test_cooling.cpp — Balance condition, weak-drive occupation, drive scans and asymptotic limits

#include "doctest.h"

#include <cmath>
#include <sstream>
#include <vector>

#include "qcool/cooling.hpp"
#include "qcool/currents.hpp"
#include "qcool/errors.hpp"

using namespace qcool;
using namespace qcool::cooling;

namespace {

// |ghat(omega)|^2 for the phenomenological single-oscillator propagator.
double g2(double w, double w0, double gamma) {
    const cplx z = cplx(w, -gamma);
    return std::norm(1.0 / (z * z - w0 * w0));
}

} // namespace

TEST_CASE("weak-drive occupation against direct complex arithmetic") {
    CoolingSetup s;
    const double x = g2(98.0, 100.0, 0.01) / g2(100.0, 100.0, 0.01);
    const double oracle = x / (1.0 - x);
    CHECK(min_occupation_weak(s, 99.0) == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(min_occupation_weak(s, 99.0) == doctest::Approx(2.5e-5).epsilon(0.2));

    CoolingSetup s2 = s;
    s2.v = 2.0 * s.v;
    CHECK(min_occupation_weak(s2, 99.0) == min_occupation_weak(s, 99.0));
    s2.v = 1e-6;
    CHECK(min_occupation_weak(s2, 99.0) == doctest::Approx(min_occupation_weak(s, 99.0)).epsilon(1e-14));

    // detailed balance of the Planck ladder: p_{n+1} / p_n = n / (n + 1)
    const double n = min_occupation_weak(s, 99.0);
    const double T = occupation_to_temperature(n, 1.0);
    CHECK(std::exp(-1.0 / T) == doctest::Approx(n / (1.0 + n)).epsilon(1e-10));

    CHECK_THROWS_AS(min_occupation_weak(s, 0.5), RegimeError);
}

TEST_CASE("balance condition") {
    CoolingSetup s;
    const auto rep = balance_report(s, 99.0);
    CHECK(rep.k_d == 1);
    CHECK(rep.K >= s.k_max);
    CHECK(rep.tail_ratio < 1e-6);
    CHECK(rep.n_bar == doctest::Approx(rep.ratio / (1.0 - rep.ratio)).epsilon(1e-14));
    CHECK(min_occupation_balance(s, 99.0) == doctest::Approx(2.5e-5).epsilon(0.2));
    // weak drive: the exact coefficients reproduce the first-order formula
    CHECK(min_occupation_balance(s, 99.0) == doctest::Approx(min_occupation_weak(s, 99.0)).epsilon(1e-3));

    // below omega_m the heating needs k_d >= 2 harmonics
    const auto low = balance_report(s, 0.6);
    CHECK(low.k_d == 2);
    CoolingSetup tight = s;
    tight.k_max = 1;
    CHECK_THROWS_AS(balance_report(tight, 0.6), RegimeError);
}

TEST_CASE("rp_nrh_ratio") {
    CoolingSetup s;
    CHECK(rp_nrh_ratio(s, 99.0, 0.0) == 0.0);
    const auto rep = balance_report(s, 99.0);
    CHECK(rp_nrh_ratio(s, 99.0, 1e12) == doctest::Approx(1.0 / rep.ratio).epsilon(1e-9));
    // the ratio equals one exactly at the balance occupation
    CHECK(rp_nrh_ratio(s, 99.0, rep.n_bar) == doctest::Approx(1.0).epsilon(1e-10));
    CoolingSetup k1 = s;
    k1.k_max = 1;
    const double n = min_occupation_weak(s, 99.0);
    CHECK(rp_nrh_ratio(k1, 99.0, n) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("sideband optimum") {
    CoolingSetup s;
    const auto r = optimize_drive_frequency(s, {1.01, 200.0});
    CHECK(r.omega_d_opt == doctest::Approx(99.0).epsilon(1e-3));
    CHECK(r.n_bar_min == doctest::Approx(sideband_limit(0.01, 1.0).value).epsilon(0.2));
    CHECK(r.regime == Regime::sideband);
    CHECK(r.T_min == doctest::Approx(occupation_to_temperature(r.n_bar_min, 1.0)).epsilon(1e-12));
    for (const auto& p : r.scan) CHECK(p.n_bar >= r.n_bar_min * (1.0 - 1e-9));

    CoolingSetup half = s;
    half.gamma = 0.005;
    const auto r2 = optimize_drive_frequency(half, {1.01, 200.0});
    CHECK(r.n_bar_min / r2.n_bar_min == doctest::Approx(4.0).epsilon(0.25));

    const auto rb = optimize_drive_frequency(s, {1.01, 200.0}, 400, Approximation::balance);
    CHECK(rb.n_bar_min == doctest::Approx(r.n_bar_min).epsilon(1e-3));
    CHECK(rb.approximation == Approximation::balance);
}

TEST_CASE("doppler optimum") {
    CoolingSetup s;
    s.gamma = 50.0;
    s.omega_0 = 1000.0;
    const auto r = optimize_drive_frequency(s, {1.01, 2000.0});
    CHECK(r.omega_d_opt == doctest::Approx(950.0).epsilon(0.05));
    CHECK(r.n_bar_min == doctest::Approx(26.3158).epsilon(0.2));
    CHECK(r.regime == Regime::doppler);
}

TEST_CASE("scan input checks") {
    CoolingSetup s;
    CHECK_THROWS_AS(optimize_drive_frequency(s, {5.0, 5.0}), DomainError);
    CHECK_THROWS_AS(optimize_drive_frequency(s, {0.5, 5.0}), RegimeError);
    s.gamma = -1.0;
    CHECK_THROWS_AS(s.validate(), InvalidInput);
}

TEST_CASE("asymptotic limits") {
    const auto d = doppler_limit(50.0, 1.0, 1000.0);
    CHECK(d.value == doctest::Approx(25.0 * 1000.0 / 950.0).epsilon(1e-14));
    CHECK(d.value == doctest::Approx(26.3158).epsilon(1e-5));
    CHECK(d.value > 10.0);
    CHECK(d.regime_valid);
    CHECK(doppler_limit(50.0, 1.0, 1e12).value == doctest::Approx(25.0).epsilon(1e-9));
    CHECK_THROWS_AS(doppler_limit(50.0, 1.0, 40.0), DomainError);

    CHECK(sideband_limit(0.01, 1.0).value == doctest::Approx(2.5e-5).epsilon(1e-14));
    CHECK(sideband_limit(0.1, 1.0).value == doctest::Approx(2.5e-3).epsilon(1e-14));
    CHECK(sideband_limit(0.1, 1.0).regime_valid);
    CHECK_FALSE(sideband_limit(2.0, 1.0).regime_valid);
    CHECK(sideband_limit(0.0, 1.0).value == 0.0);

    CHECK(classify(50.0, 1.0) == Regime::doppler);
    CHECK(classify(0.01, 1.0) == Regime::sideband);
    CHECK(classify(1.0, 1.0) == Regime::intermediate);
}

TEST_CASE("occupation_to_temperature") {
    CHECK(occupation_to_temperature(1.0 / (std::exp(1.0) - 1.0), 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(occupation_to_temperature(2.5e-5, 1.0) == doctest::Approx(1.0 / std::log(40001.0)).epsilon(1e-12));
    CHECK(occupation_to_temperature(2.5e-5, 1.0) == doctest::Approx(0.094326).epsilon(1e-3));
    double prev = 0.0;
    for (double n = 1e-8; n <= 1e3; n *= 3.7) {
        const double T = occupation_to_temperature(n, 1.0);
        CHECK(T > prev);
        prev = T;
        CHECK(currents::planck_occupation(1.0, T) == doctest::Approx(n).epsilon(1e-12));
    }
    CHECK_THROWS_AS(occupation_to_temperature(0.0, 1.0), DomainError);
}

TEST_CASE("the currents cooling condition flips at the balance temperature") {
    // dump confined to the band around omega_0, so the undriven channel cannot leak heat at omega_m
    CoolingSetup s;
    const RMatrix one = RMatrix::Identity(1, 1);
    s.I_B = network::SpectralDensity::table({0.0, 40.0, 50.0, 200.0, 210.0}, {0 * one, 0 * one, one, one, 0 * one});
    const double wd = 99.0;
    const double T_min = occupation_to_temperature(min_occupation_balance(s, wd), 1.0);
    floquet::FloquetEngine e(s.network(wd), s.damping());
    auto cools = [&](double T) {
        currents::Reservoirs r{
            network::ReservoirSpec::make("mode", T, network::SpectralDensity::delta(1e-4, 1.0, one), {0}, 1),
            network::ReservoirSpec::make("dump", 0.0, s.I_B, {0}, 1)};
        return currents::cooling_condition(currents::heat_report(e, r), 0);
    };
    CHECK(cools(2.0 * T_min));
    CHECK_FALSE(cools(0.5 * T_min));
    CHECK(cools(1.01 * T_min));
    CHECK_FALSE(cools(0.99 * T_min));
}

TEST_CASE("csv output") {
    CoolingSetup s;
    const auto r = optimize_drive_frequency(s, {1.01, 200.0}, 50);
    std::ostringstream a, b;
    write_summary_csv(a, r);
    write_scan_csv(b, r);
    CHECK(a.str().rfind("n_bar_min,omega_d_opt,T_min,regime,approximation\n", 0) == 0);
    CHECK(a.str().find(",sideband,weak") != std::string::npos);
    CHECK(b.str().rfind("omega_d,n_bar,T_equiv\n", 0) == 0);
}
