// test_currents.cpp — Transfer functions, heat-current decomposition, covariances, power

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "qcool/currents.hpp"
#include "qcool/errors.hpp"
#include "qcool/validation.hpp"

using namespace qcool;
using namespace qcool::currents;
using qcool::validation::two_node_fixture;

namespace {

RMatrix site(int n, int s) {
    RMatrix p = RMatrix::Zero(n, n);
    p(s, s) = 1.0;
    return p;
}

network::NetworkSpec undriven_pair() {
    network::NetworkInput in;
    in.V0.resize(2, 2);
    in.V0 << 1.0, 0.2, 0.2, 1.5;
    return network::build_network(in);
}

Reservoirs two_baths(double Ta, double Tb, double ga = 0.05, double gb = 0.03) {
    return {network::ReservoirSpec::make("a", Ta, network::SpectralDensity::ohmic(ga, 0.0, site(2, 0)), {0}, 2),
            network::ReservoirSpec::make("b", Tb, network::SpectralDensity::ohmic(gb, 0.0, site(2, 1)), {1}, 2)};
}

HeatCurrentReport report_for(const validation::TwoNodeFixture& f) {
    floquet::FloquetEngine e(f.net, f.damping);
    return heat_report(e, f.res);
}

// Single oscillator (omega_0 = 1) with one ohmic bath of cutoff Lambda.
struct Single {
    network::NetworkSpec net;
    Reservoirs res;
    network::DampingBackend damping;
};

Single single(double gamma, double T, double cutoff) {
    network::NetworkInput in;
    in.V0 = RMatrix::Constant(1, 1, 1.0);
    Single s;
    s.net = network::build_network(in);
    s.res = {network::ReservoirSpec::make("bath", T, network::SpectralDensity::ohmic(gamma, cutoff, site(1, 0)), {0}, 1)};
    s.damping = network::make_markovian_backend(s.net, s.res);
    return s;
}

} // namespace

TEST_CASE("planck occupation") {
    CHECK(planck_occupation(1.0, 1.0) == doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-14));
    CHECK(planck_occupation(1.0, 1.0) == doctest::Approx(0.581977).epsilon(1e-6));
    CHECK(planck_occupation(1.0, 0.0) == 0.0);
    CHECK(planck_occupation(1e-8, 1.0) == doctest::Approx(1e8).epsilon(1e-2));
    CHECK(planck_occupation(800.0, 1.0) == doctest::Approx(std::exp(-800.0)).epsilon(1e-10));
    CHECK(coth_half(1.0, 1.0) == doctest::Approx(2.0 * planck_occupation(1.0, 1.0) + 1.0).epsilon(1e-14));
    CHECK(coth_half(3.0, 0.0) == 1.0);
    CHECK_THROWS_AS(planck_occupation(0.0, 1.0), DomainError);
}

TEST_CASE("transfer function") {
    const auto f = two_node_fixture();
    floquet::FloquetEngine e(f.net, f.damping);
    const double w = 0.83;

    // independent evaluation from the coefficients
    const auto c = e.at(w);
    for (int k = -1; k <= 1; ++k) {
        const RMatrix Ia = f.res[0].density(std::abs(w + k * f.net.omega_d));
        const RMatrix Ib = f.res[1].density(w);
        const cplx tr = (Ia.cast<cplx>() * c.A(k) * Ib.cast<cplx>() * c.A(k).adjoint()).trace();
        CHECK(transfer_function(e, f.res, 0, 1, k, w) == doctest::Approx(std::numbers::pi / 2.0 * tr.real()).epsilon(1e-12));
        CHECK(transfer_function(e, f.res, 0, 1, k, w) >= 0.0);
    }

    const auto net = undriven_pair();
    const auto res = two_baths(0.5, 0.2);
    floquet::FloquetEngine still(net, network::make_markovian_backend(net, res));
    for (double om : {0.3, 0.97, 1.25, 2.0})
        CHECK(transfer_function(still, res, 0, 1, 0, om) ==
              doctest::Approx(transfer_function(still, res, 1, 0, 0, om)).epsilon(1e-10));

    auto scaled = res;
    scaled[0].density = network::SpectralDensity::ohmic(3.0 * 0.05, 0.0, site(2, 0));
    scaled[1].density = network::SpectralDensity::ohmic(3.0 * 0.03, 0.0, site(2, 1));
    CHECK(transfer_function(still, scaled, 0, 1, 0, 1.1) ==
          doctest::Approx(9.0 * transfer_function(still, res, 0, 1, 0, 1.1)).epsilon(1e-12));

    auto zero = res;
    zero[0].density = network::SpectralDensity::ohmic(0.0, 0.0, site(2, 0));
    CHECK(transfer_function(still, zero, 0, 1, 0, 1.1) == 0.0);
}

TEST_CASE("two-node refrigerator fixture") {
    const auto rep = report_for(two_node_fixture());
    REQUIRE(rep.reservoirs.size() == 2);
    // regression values of the reference fixture
    CHECK(rep.reservoirs[0].q_total == doctest::Approx(0.002439911796).epsilon(1e-6));
    CHECK(rep.reservoirs[1].q_total == doctest::Approx(-0.002515141396).epsilon(1e-6));
    CHECK(rep.power == doctest::Approx(7.522959954e-05).epsilon(1e-5));

    for (const auto& r : rep.reservoirs) {
        CHECK(r.q_total == doctest::Approx(r.q_rp + r.q_rh + r.q_nrh).epsilon(1e-12));
        CHECK(r.q_direct == doctest::Approx(r.q_total).epsilon(1e-4));
        CHECK(r.q_rh <= 1e-12);
        CHECK(r.q_nrh <= 1e-12);
        CHECK(r.tail_ratio < 1e-6);
    }
    CHECK(rep.has_power_sigma_xx);
    CHECK(rep.power_sigma_xx == doctest::Approx(rep.power).epsilon(1e-3));
    CHECK(average_power(rep) == doctest::Approx(rep.power));
    CHECK(rep.power > 0.0);
}

TEST_CASE("driving pumps heat out of the colder bath") {
    // node 0 is the lower mode; a drive near the mode splitting moves its quanta up to node 1
    const auto rep = report_for(two_node_fixture(0.28, 1.0, 0.49, 0.5));
    CHECK(rep.reservoirs[0].q_total > 0.0);
    CHECK(rep.reservoirs[1].q_total < 0.0);
    CHECK(rep.power > 0.0);
    CHECK(cooling_condition(rep, 0));
    CHECK_FALSE(cooling_condition(rep, 1));
}

TEST_CASE("equilibrium and undriven limits") {
    const auto net = undriven_pair();
    const auto res = two_baths(0.4, 0.4);
    floquet::FloquetEngine e(net, network::make_markovian_backend(net, res));
    const auto rep = heat_report(e, res);
    for (const auto& r : rep.reservoirs) {
        CHECK(std::abs(r.q_total) <= 1e-9);
        CHECK(std::abs(r.q_direct) <= 1e-9);
        CHECK(r.q_nrh == 0.0);
    }
    CHECK(std::abs(rep.power) <= 1e-9);
    CHECK_FALSE(cooling_condition(rep, 0));

    // a temperature gradient alone drives heat from hot to cold with no work
    const auto res2 = two_baths(0.6, 0.2);
    const auto rep2 = heat_report(e, res2);
    CHECK(rep2.reservoirs[0].q_total > 0.0);
    CHECK(rep2.reservoirs[0].q_total == doctest::Approx(-rep2.reservoirs[1].q_total).epsilon(1e-7));
}

TEST_CASE("zero temperature: pair creation only") {
    const auto rep = report_for(two_node_fixture(0.7, 1.0, 0.0, 0.0));
    for (const auto& r : rep.reservoirs) {
        CHECK(std::abs(r.q_rp) < 1e-14);
        CHECK(std::abs(r.q_rh) < 1e-14);
        CHECK(r.q_nrh < 0.0);
        CHECK(r.q_direct == doctest::Approx(r.q_nrh).epsilon(1e-4));
    }
    CHECK_FALSE(cooling_condition(rep, 0));
    CHECK_FALSE(cooling_condition(rep, 1));
}

TEST_CASE("single driven bath is only heated") {
    auto f = two_node_fixture();
    f.res.pop_back();
    f.damping = network::make_markovian_backend(f.net, f.res);
    for (double T : {0.0, 0.3, 1.0}) {
        f.res[0].temperature = T;
        const auto rep = report_for(f);
        CHECK(rep.reservoirs[0].q_total < 0.0);
        CHECK(rep.reservoirs[0].q_direct < 0.0);
    }
}

TEST_CASE("single-component heat functions") {
    const auto f = two_node_fixture();
    floquet::FloquetEngine e(f.net, f.damping);
    const auto rep = heat_report(e, f.res);
    CHECK(heat_rp(e, f.res, 1) == doctest::Approx(rep.reservoirs[1].q_rp).epsilon(1e-7));
    CHECK(heat_rh(e, f.res, 1) == doctest::Approx(rep.reservoirs[1].q_rh).epsilon(1e-7));
    CHECK(heat_nrh(e, f.res, 1) == doctest::Approx(rep.reservoirs[1].q_nrh).epsilon(1e-7));
    CHECK(heat_direct(e, f.res, 1) == doctest::Approx(rep.reservoirs[1].q_direct).epsilon(1e-7));

    const auto s = covariance_coefficients(e, f.res);
    CHECK(heat_direct_from(s, f.net, f.res[0]) == doctest::Approx(rep.reservoirs[0].q_direct).epsilon(1e-6));
    CHECK(power_from(s, f.net) == doctest::Approx(rep.power).epsilon(1e-3));
}

TEST_CASE("complex drive without time-reversal symmetry") {
    network::NetworkInput in;
    in.V0.resize(2, 2);
    in.V0 << 1.0, 0.2, 0.2, 1.5;
    CMatrix v1(2, 2);
    v1 << cplx(0.05, 0.0), cplx(0.01, 0.02), cplx(0.01, 0.02), cplx(0.0, 0.03);
    in.Vk[1] = v1;
    in.omega_d = 0.7;
    const auto net = network::build_network(in);
    const auto res = two_baths(0.8, 0.3);
    floquet::FloquetEngine e(net, network::make_markovian_backend(net, res));
    CHECK_THROWS_AS(heat_nrh(e, res, 0), ContractError);
    const auto rep = heat_report(e, res);
    CHECK_FALSE(rep.nrh_included);
    CHECK(std::isnan(rep.reservoirs[0].q_total));
    double sum = 0.0;
    for (const auto& r : rep.reservoirs) sum += r.q_direct;
    CHECK(rep.power == doctest::Approx(-sum));
    CHECK(rep.power_sigma_xx == doctest::Approx(rep.power).epsilon(1e-3));
}

TEST_CASE("delta-mode reservoir: symbolic collapse") {
    const auto f = two_node_fixture();
    const double wm = 0.9, I = 0.02, Tm = 0.3;
    Reservoirs res{f.res[0], network::ReservoirSpec::make("mode", Tm, network::SpectralDensity::delta(I, wm, site(2, 1)), {1}, 2)};
    const auto damping = network::make_markovian_backend(f.net, {f.res[0]});
    floquet::FloquetEngine e(f.net, damping);

    // hand-collapsed RP for the mode: both slots of the delta evaluated at their roots
    const auto& hot = res[0];
    const RMatrix W = I * site(2, 1);
    const double wd = f.net.omega_d;
    double oracle = 0.0;
    for (int k = -e.K(); k <= e.K(); ++k) {
        if (wm + k * wd > 0.0) {
            const auto c = e.at(wm);
            const RMatrix Ib = hot.density(wm + k * wd);
            const double p = std::numbers::pi / 2.0 *
                             (Ib.cast<cplx>() * c.A(k) * W.cast<cplx>() * c.A(k).adjoint()).trace().real();
            oracle += wm * p * planck_occupation(wm, Tm);
        }
        const double ws = wm - k * wd;
        if (ws > 0.0) {
            const auto c = e.at(ws);
            const RMatrix Ib = hot.density(ws);
            const double p = std::numbers::pi / 2.0 *
                             (W.cast<cplx>() * c.A(k) * Ib.cast<cplx>() * c.A(k).adjoint()).trace().real();
            oracle -= wm * p * planck_occupation(ws, hot.temperature);
        }
    }
    CHECK(heat_rp(e, res, 1) == doctest::Approx(oracle).epsilon(1e-7));
    CHECK(heat_rh(e, res, 1) == 0.0);
}

TEST_CASE("delta-mode reservoir: narrow Lorentzian limit") {
    const auto f = two_node_fixture();
    const double wm = 0.9, I = 0.02, Tm = 0.3;
    const auto damping = network::make_markovian_backend(f.net, {f.res[0]});
    floquet::FloquetEngine e(f.net, damping);
    auto with = [&](network::SpectralDensity d) {
        return Reservoirs{f.res[0], network::ReservoirSpec::make("mode", Tm, std::move(d), {1}, 2)};
    };
    const double exact = heat_rp(e, with(network::SpectralDensity::delta(I, wm, site(2, 1))), 1);

    Options o;
    o.quad.rel_tol = 1e-7;
    std::vector<double> q;
    for (double w : {1e-3, 1e-4}) {
        std::vector<double> om;
        std::vector<RMatrix> v;
        const int n = 4001;
        for (int i = 0; i < n; ++i) {
            const double x = wm + w * std::tan(-std::numbers::pi / 2 + std::numbers::pi * (i + 0.5) / n);
            if (x < 0.0 || x > 3.0) continue;
            om.push_back(x);
            v.push_back(site(2, 1) * (I / std::numbers::pi * w / ((x - wm) * (x - wm) + w * w)));
        }
        q.push_back(heat_rp(e, with(network::SpectralDensity::table(om, v)), 1, o));
    }
    // the Lorentzian error is linear in the width
    const double extrapolated = q[1] + (q[1] - q[0]) / 9.0;
    CHECK(extrapolated == doctest::Approx(exact).epsilon(1e-3));
    CHECK(std::abs(q[1] - exact) < std::abs(q[0] - exact));
}

TEST_CASE("stationary covariances of a single oscillator") {
    const auto s = single(1e-3, 1.0, 50.0);
    floquet::FloquetEngine e(s.net, s.damping);
    const auto cc = covariance_coefficients(e, s.res, true);
    const auto cov = covariance_at(cc, s.net, 0.3);
    CHECK(std::abs(cov.xp(0, 0)) < 1e-6);
    const double n_xx = cov.xx(0, 0) - 0.5;
    const double n_pp = cov.pp(0, 0) - 0.5;
    CHECK(n_xx == doctest::Approx(planck_occupation(1.0, 1.0)).epsilon(0.02));
    CHECK(n_pp == doctest::Approx(planck_occupation(1.0, 1.0)).epsilon(0.02));

    // equipartition: sigma_xx grows linearly with T at high temperature
    const auto hot1 = single(1e-3, 50.0, 0.0), hot2 = single(1e-3, 100.0, 0.0);
    floquet::FloquetEngine e1(hot1.net, hot1.damping), e2(hot2.net, hot2.damping);
    const double x1 = covariance_at(covariance_coefficients(e1, hot1.res), hot1.net, 0.0).xx(0, 0);
    const double x2 = covariance_at(covariance_coefficients(e2, hot2.res), hot2.net, 0.0).xx(0, 0);
    CHECK(x2 / x1 == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("csv output") {
    const auto rep = report_for(two_node_fixture());
    std::ostringstream os;
    write_csv(os, rep);
    const auto text = os.str();
    CHECK(text.rfind("reservoir,q_rp,q_rh,q_nrh,q_total,q_direct,power,err_estimate\n", 0) == 0);
    CHECK(text.find("\nhot,") != std::string::npos);
    CHECK(text.find("\ncold,") != std::string::npos);
}
