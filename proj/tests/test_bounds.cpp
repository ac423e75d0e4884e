// test_bounds.cpp — Finite-bath, radiation, Landauer and finite-dimensional bounds

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qcool/bounds.hpp"
#include "qcool/errors.hpp"
#include "qcool/qstat.hpp"

using namespace qcool;
using namespace qcool::bounds;

namespace {

CoolingTask task(int dS, int g, double delta, double T, double W) {
    CoolingTask t;
    t.d_S = dS;
    t.g = g;
    t.delta = delta;
    t.T = T;
    t.W_wc = W;
    return t;
}

// Independent oracle: exponent (V/T)(a nu W / L)^{1/(1-nu)}.
double closed_form_log(double a, double nu, double V, double T, double W, double L) {
    return -(V / T) * std::pow(a * nu * W / L, 1.0 / (1.0 - nu));
}

} // namespace

TEST_CASE("temperature_from_error") {
    CHECK(temperature_from_error(task(2, 1, 1.0, 1.0, 1.0), 0.01) == doctest::Approx(1.0 / std::log(200.0)).epsilon(1e-14));
    CHECK(temperature_from_error(task(2, 1, 1.0, 1.0, 1.0), 0.01) == doctest::Approx(0.188708).epsilon(2e-4));
    CHECK(temperature_from_error(task(2, 1, 1.0, 1.0, 1.0), 2.0 * std::exp(-100.0)) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(temperature_from_error(task(4, 2, 2.0, 1.0, 1.0), 0.1) == doctest::Approx(0.667610).epsilon(2e-5));
    CHECK_THROWS_AS(temperature_from_error(task(2, 1, 1.0, 1.0, 1.0), 0.0), DomainError);
    CHECK_THROWS_AS(temperature_from_error(task(2, 1, 1.0, 1.0, 1.0), 1.5), DomainError);
}

TEST_CASE("heat_capacity") {
    const auto pl = DoSModel::power_law(1.0, 0.5, 1.0);
    CHECK(heat_capacity(pl, 4.0) == doctest::Approx(2.0).epsilon(1e-12));
    const auto rad = DoSModel::radiation(2.0);
    for (double E : {0.1, 1.0, 7.0, 100.0}) {
        CHECK(heat_capacity(rad, E) / rad.ln_omega(E) == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(heat_capacity(rad, E) > 0.0);
    }
    CHECK(radiation_prefactor() == doctest::Approx(4.0 / 3.0 * std::pow(15.0, -0.25) * std::sqrt(std::numbers::pi)));

    std::vector<double> e, f;
    for (int i = 0; i <= 400; ++i) {
        const double E = 1.0 + 0.02 * i;
        e.push_back(E);
        f.push_back(pl.ln_omega(E));
    }
    const auto tab = DoSModel::tabulated(e, f);
    for (double E : {2.0, 4.0, 6.5}) CHECK(heat_capacity(tab, E) == doctest::Approx(heat_capacity(pl, E)).epsilon(1e-4));
    CHECK_THROWS_AS(DoSModel::tabulated({1.0, 1.0, 2.0}, {0.0, 1.0, 2.0}), InvalidInput);

    const auto linear = DoSModel::tabulated({1.0, 2.0, 3.0, 4.0}, {1.0, 2.0, 3.0, 4.0});
    CHECK_THROWS_AS(heat_capacity(linear, 2.5), ModelInvalid);
}

TEST_CASE("masanes_error_bound hand fixture") {
    const auto r = masanes_error_bound(task(2, 1, 1.0, 1.0, 0.575364), DoSModel::power_law(1.0, 0.5, 1.0));
    CHECK(r.epsilon_min == doctest::Approx(std::exp(-1.0)).epsilon(1e-5));
    CHECK(r.epsilon_min == doctest::Approx(0.367879).epsilon(1e-5));
    // the implicit equation d ln Omega(E0) = L / W holds at the returned E0
    const double L = std::log(4.0 / 3.0);
    CHECK(0.5 / std::sqrt(r.E0) == doctest::Approx(L / 0.575364).epsilon(1e-10));
    CHECK(r.epsilon_with_prefactor > 0.0);
    CHECK(r.epsilon_with_prefactor <= 1.0);
}

TEST_CASE("masanes_error_bound agrees with the closed form") {
    for (double nu : {0.25, 0.5, 0.75})
        for (double W : {1.0, 5.0, 25.0})
            for (double V : {0.5, 1.0, 10.0}) {
                const auto t = task(2, 1, 1.0, 1.0, W);
                const auto r = masanes_error_bound(t, DoSModel::power_law(1.0, nu, V));
                const double oracle = closed_form_log(1.0, nu, V, 1.0, W, t.log_ratio());
                CHECK(r.log_epsilon_min == doctest::Approx(oracle).epsilon(1e-6));
                CHECK(bath_family_log_error_bound(t, 1.0, nu, V) == doctest::Approx(oracle).epsilon(1e-12));
            }
}

TEST_CASE("masanes radiation DoS matches the nu = 3/4 closed form") {
    const auto t = task(2, 1, 1.0, 1.0, 10.0);
    const auto r = masanes_error_bound(t, DoSModel::radiation(1.0));
    CHECK(r.log_epsilon_min ==
          doctest::Approx(bath_family_log_error_bound(t, radiation_prefactor(), 0.75, 1.0)).epsilon(1e-6));
    CHECK(r.regime_valid);
}

TEST_CASE("masanes bound is monotone in W_wc and the prefactor is subleading") {
    const auto dos = DoSModel::power_law(1.0, 0.5, 1.0);
    double prev = 0.0;
    double prev_rel = qstat::kInf;
    for (double W : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
        const auto r = masanes_error_bound(task(2, 1, 1.0, 1.0, W), dos);
        CHECK(r.log_epsilon_min < prev);
        prev = r.log_epsilon_min;
        const double log_full = r.ln_omega_E0 - r.E0 / 1.0 - r.log_partition;
        const double rel = std::abs(log_full - r.log_epsilon_min) / std::abs(r.log_epsilon_min);
        CHECK(rel < prev_rel);
        prev_rel = rel;
    }
    CHECK_THROWS_AS(masanes_error_bound(task(1, 1, 1.0, 1.0, 1.0), dos), DomainError);
}

TEST_CASE("bath_family_error_bound") {
    const auto t = task(2, 1, 1.0, 1.0, 0.575364);
    CHECK(bath_family_error_bound(t, 1.0, 0.5, 1.0) == doctest::Approx(0.367879).epsilon(1e-5));
    CHECK(bath_family_error_bound(t, 1.0, 0.5, 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(bath_family_log_error_bound(t, 1.0, 0.5, 2.0) ==
          doctest::Approx(2.0 * bath_family_log_error_bound(t, 1.0, 0.5, 1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(bath_family_error_bound(t, 1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("radiation_temperature_bound and time scaling") {
    const auto t = task(2, 1, 1.0, 1.0, 10.0);
    const double oracle = 15.0 / (std::numbers::pi * std::numbers::pi) * std::pow(std::log(4.0 / 3.0), 4) * 1e-4;
    CHECK(radiation_temperature_bound(t, 1.0).value == doctest::Approx(oracle).epsilon(1e-13));
    CHECK(radiation_temperature_bound(t, 1.0).value == doctest::Approx(1.0411e-6).epsilon(1e-4));
    CHECK(radiation_temperature_bound(task(2, 1, 1.0, 1.0, 20.0), 1.0).value ==
          doctest::Approx(oracle / 16.0).epsilon(1e-13));
    CHECK(radiation_temperature_bound(t, 2.0).value == doctest::Approx(oracle / 2.0).epsilon(1e-13));

    CHECK(time_scaling_bound(task(2, 1, 1.0, 1.0, 1.0), 1.0, 10.0, 1.0).value == doctest::Approx(oracle).epsilon(1e-13));
    for (double t0 : {0.3, 1.0, 7.0}) {
        const double a = time_scaling_bound(t, t0, 1.0, 1.0).value;
        const double b = time_scaling_bound(t, 2.0 * t0, 1.0, 1.0).value;
        CHECK(b / a == doctest::Approx(0.0078125).epsilon(1e-14));
    }
    CHECK(time_scaling_bound(t, 1e6, 1.0, 1.0).value < 1e-40);
    CHECK_THROWS_AS(radiation_temperature_bound(t, -1.0), InvalidInput);
}

TEST_CASE("landauer bound and brute-force oracle") {
    CHECK(landauer_purity_bound(0.3, 1.0, 2.0) == doctest::Approx(0.3 * std::exp(-2.0)).epsilon(1e-14));
    CHECK(landauer_purity_bound(0.3, 1.0, 2.0) == doctest::Approx(0.040601).epsilon(1e-5));
    CHECK(landauer_purity_bound(0.3, 1.0, 0.0) == doctest::Approx(0.3));
    CHECK(landauer_purity_bound(0.3, 1.0, 1e4) == doctest::Approx(0.0));

    const auto r = landauer_brute_force_oracle(2, 3, 1.0, 1000, 17);
    CHECK(r.trials == 1000);
    CHECK(r.violations == 0);
    CHECK(r.worst_slack >= -1e-9);
    const auto r0 = landauer_brute_force_oracle(2, 2, 0.0, 300, 19);
    CHECK(r0.violations == 0);
    CHECK_THROWS_AS(landauer_brute_force_oracle(5, 2, 1.0, 10, 1), InvalidInput);
}

TEST_CASE("scharlau and allahverdyan") {
    CHECK(scharlau_bound(1.0, 1.0, 2.0, 4) == doctest::Approx(1.0 / (2.0 + std::log(4.0))).epsilon(1e-14));
    CHECK(scharlau_bound(1.0, 1.0, 2.0, 4) == doctest::Approx(0.295227).epsilon(5e-4));
    CHECK(scharlau_bound(1.0, 1.0, 2.0, 1) == doctest::Approx(0.5));
    CHECK(allahverdyan_bound(1.0, 1.0, 2.0) == doctest::Approx(0.5));
    CHECK(allahverdyan_bound(1.0, 1.0, 1e12) < 1e-11);

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.05, 5.0);
    std::uniform_int_distribution<int> d(2, 64);
    for (int i = 0; i < 500; ++i) {
        const double T = u(rng), D = u(rng), J = u(rng);
        const int dB = d(rng);
        CHECK(allahverdyan_bound(T, D, J) >= scharlau_bound(T, D, J, dB));
        CHECK(scharlau_bound(T, D, J + 0.1, dB) <= scharlau_bound(T, D, J, dB));
        CHECK(scharlau_bound(T, D, J, dB + 1) <= scharlau_bound(T, D, J, dB));
    }
}

TEST_CASE("monotonicity of the bath bounds on random argument pairs") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.1, 10.0), n(0.1, 0.9);
    for (int i = 0; i < 300; ++i) {
        const double nu = n(rng), V = u(rng), W = u(rng), dW = u(rng), dV = u(rng);
        const auto t = task(3, 1, 1.0, 1.0, W), t2 = task(3, 1, 1.0, 1.0, W + dW);
        CHECK(bath_family_log_error_bound(t2, 1.0, nu, V) <= bath_family_log_error_bound(t, 1.0, nu, V));
        CHECK(bath_family_log_error_bound(t, 1.0, nu, V + dV) <= bath_family_log_error_bound(t, 1.0, nu, V));
        CHECK(radiation_temperature_bound(t2, V).value <= radiation_temperature_bound(t, V).value);
        CHECK(radiation_temperature_bound(t, V + dV).value <= radiation_temperature_bound(t, V).value);
    }
}

TEST_CASE("cooling_necessary_condition and work qubit") {
    CHECK_FALSE(cooling_necessary_condition(3.0, qstat::kInf));
    CHECK(cooling_necessary_condition(1.5, 1.5));
    CHECK(cooling_necessary_condition(qstat::kInf, qstat::kInf));

    const auto h = qstat::HamiltonianSpec::diagonal(std::vector<double>{0.0, 1.0});
    const double lnZ = std::log(1.0 + std::exp(-1.0));
    CHECK(lnZ == doctest::Approx(0.313262).epsilon(1e-6));
    CHECK(work_qubit_cooling_possible(0.35, h, 1.0));
    CHECK_FALSE(work_qubit_cooling_possible(0.0, h, 1.0));
    CHECK_FALSE(work_qubit_cooling_possible(qstat::log_partition_function(h, 1.0), h, 1.0));
}
