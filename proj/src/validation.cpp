// validation.cpp — Built-in invariant suite and acceptance criteria

#include "qcool/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "qcool/bounds.hpp"
#include "qcool/config.hpp"
#include "qcool/cooling.hpp"
#include "qcool/errors.hpp"
#include "qcool/qstat.hpp"
#include "qcool/sampling.hpp"

namespace qcool::validation {

namespace {

using Clock = std::chrono::steady_clock;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string fmt(double x, int prec = 6) {
    std::ostringstream os;
    os << std::setprecision(prec) << x;
    return os.str();
}

// Runs `body`, records the wall time and converts thrown errors into failures.
CheckResult timed(const std::string& name, double limit_s, const std::function<bool(std::ostringstream&)>& body) {
    CheckResult r;
    r.name = name;
    std::ostringstream detail;
    const auto t0 = Clock::now();
    try {
        r.passed = body(detail);
    } catch (const std::exception& e) {
        r.passed = false;
        detail << "threw: " << e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_s > 0.0 && r.seconds > limit_s) {
        r.passed = false;
        detail << "; runtime " << fmt(r.seconds, 3) << " s exceeds " << limit_s << " s";
    }
    r.detail = detail.str();
    return r;
}

// Least-squares slope and R^2 of y against x.
std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    const double r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return {slope, r2};
}

currents::HeatCurrentReport fixture_report(const TwoNodeFixture& f) {
    floquet::FloquetEngine engine(f.net, f.damping);
    return currents::heat_report(engine, f.res);
}

double lowest_mode(const TwoNodeFixture& f) {
    const auto modes = network::normal_mode_frequencies(f.net, f.damping);
    return *std::min_element(modes.begin(), modes.end());
}

// Gibbs-preserving stochastic map built from random partial thermalizations of level pairs.
std::vector<double> thermal_process(std::vector<double> p, const std::vector<double>& gibbs, sampling::Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int step = 0; step < 6; ++step) {
        const std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        const double lam = unit(rng);
        const double s = p[i] + p[j];
        const double gi = gibbs[i] / (gibbs[i] + gibbs[j]);
        p[i] = (1.0 - lam) * p[i] + lam * s * gi;
        p[j] = s - p[i];
    }
    return p;
}

} // namespace

TwoNodeFixture two_node_fixture(double omega_d, double gamma_scale, double T_hot, double T_cold) {
    network::NetworkInput in;
    in.V0.resize(2, 2);
    in.V0 << 1.0, 0.2, 0.2, 1.5;
    CMatrix v1(2, 2);
    v1 << 0.05, 0.01, 0.01, 0.03;
    in.Vk[1] = v1;
    in.omega_d = omega_d;
    TwoNodeFixture f;
    f.net = network::build_network(in);
    RMatrix w0 = RMatrix::Zero(2, 2), w1 = RMatrix::Zero(2, 2);
    w0(0, 0) = 1.0;
    w1(1, 1) = 1.0;
    f.res.push_back(network::ReservoirSpec::make(
        "hot", T_hot, network::SpectralDensity::ohmic(0.05 * gamma_scale, 0.0, w0), {0}, 2));
    f.res.push_back(network::ReservoirSpec::make(
        "cold", T_cold, network::SpectralDensity::ohmic(0.03 * gamma_scale, 0.0, w1), {1}, 2));
    f.damping = network::make_markovian_backend(f.net, f.res);
    return f;
}

CheckResult acceptance_sideband() {
    return timed("1 sideband limit", 10.0, [](std::ostringstream& d) {
        cooling::CoolingSetup s;
        s.omega_m = 1.0;
        s.omega_0 = 100.0;
        s.gamma = 0.01;
        const auto r = cooling::optimize_drive_frequency(s, {1.01, 200.0});
        const double target_wd = s.omega_0 - s.omega_m;
        const double target_n = s.gamma * s.gamma / (4.0 * s.omega_m * s.omega_m);
        d << "omega_d_opt=" << fmt(r.omega_d_opt, 8) << " (target " << target_wd << ", rel "
          << fmt(rel(r.omega_d_opt, target_wd), 3) << "); n_bar=" << fmt(r.n_bar_min) << " (target " << target_n
          << ", rel " << fmt(rel(r.n_bar_min, target_n), 3) << ")";
        return rel(r.omega_d_opt, target_wd) <= 1e-3 && rel(r.n_bar_min, target_n) <= 0.2;
    });
}

CheckResult acceptance_doppler() {
    return timed("2 doppler limit", 10.0, [](std::ostringstream& d) {
        cooling::CoolingSetup s;
        s.omega_m = 1.0;
        s.omega_0 = 1000.0;
        s.gamma = 50.0;
        const auto r = cooling::optimize_drive_frequency(s, {1.01, 2000.0});
        const double target_wd = s.omega_0 - s.gamma;
        const double target_n = s.gamma / (2.0 * s.omega_m) * s.omega_0 / (s.omega_0 - s.gamma);
        d << "omega_d_opt=" << fmt(r.omega_d_opt, 8) << " (target " << target_wd << ", rel "
          << fmt(rel(r.omega_d_opt, target_wd), 3) << "); n_bar=" << fmt(r.n_bar_min) << " (target "
          << fmt(target_n) << ", rel " << fmt(rel(r.n_bar_min, target_n), 3) << ")";
        return rel(r.omega_d_opt, target_wd) <= 0.05 && rel(r.n_bar_min, target_n) <= 0.2;
    });
}

CheckResult acceptance_heat_cross_oracle() {
    return timed("3 heat-current cross-oracle", 60.0, [](std::ostringstream& d) {
        const auto rep = fixture_report(two_node_fixture());
        bool ok = true;
        for (const auto& r : rep.reservoirs) {
            const double e = rel(r.q_direct, r.q_total);
            d << r.label << ": RP+RH+NRH=" << fmt(r.q_total, 10) << " direct=" << fmt(r.q_direct, 10) << " rel "
              << fmt(e, 3) << "; ";
            ok = ok && e <= 1e-4;
        }
        return ok;
    });
}

CheckResult acceptance_first_law() {
    return timed("4 first-law closure", 60.0, [](std::ostringstream& d) {
        const auto rep = fixture_report(two_node_fixture());
        double sum = 0.0, qmax = 0.0;
        for (const auto& r : rep.reservoirs) {
            sum += r.q_total;
            qmax = std::max(qmax, std::abs(r.q_total));
        }
        const double closure = std::abs(rep.power_sigma_xx + sum) / qmax;
        d << "W(sigma_xx)=" << fmt(rep.power_sigma_xx, 10) << " sum Q=" << fmt(sum, 10) << " closure "
          << fmt(closure, 3);
        return rep.has_power_sigma_xx && closure <= 1e-3;
    });
}

CheckResult acceptance_zero_temperature() {
    return timed("5 zero-temperature pair creation", 60.0, [](std::ostringstream& d) {
        const auto f0 = two_node_fixture(0.7, 1.0, 0.0, 0.0);
        const double omega0 = lowest_mode(f0);
        const auto rep0 = fixture_report(f0);
        const auto rep1 = fixture_report(two_node_fixture(0.7, 1.0, 1e-6 * omega0, 1e-6 * omega0));
        bool ok = true;
        for (std::size_t i = 0; i < rep0.reservoirs.size(); ++i) {
            const auto& r = rep0.reservoirs[i];
            const double resonant = std::abs(r.q_rp) + std::abs(r.q_rh);
            const double drift = rel(rep1.reservoirs[i].q_nrh, r.q_nrh);
            d << r.label << ": |RP|+|RH|=" << fmt(resonant, 3) << " NRH=" << fmt(r.q_nrh) << " (T=1e-6 w0: "
              << fmt(rep1.reservoirs[i].q_nrh) << ", rel " << fmt(drift, 3) << "); ";
            ok = ok && resonant <= 1e-10 && r.q_nrh < 0.0 && drift <= 0.01;
        }
        return ok;
    });
}

CheckResult acceptance_coupling_scaling() {
    return timed("6 coupling scaling", 300.0, [](std::ostringstream& d) {
        // 2 omega_d stays below the lowest mode so no higher-order resonant pair creation enters.
        const double omega_d = 0.4;
        const std::vector<double> scales{1.0, 0.5, 0.25};
        std::vector<double> lg;
        std::vector<std::vector<double>> rp(2), rh(2), nrh(2);
        double omega0 = 0.0;
        for (double s : scales) {
            const auto f = two_node_fixture(omega_d, s);
            omega0 = lowest_mode(f);
            const auto rep = fixture_report(f);
            lg.push_back(std::log(0.05 * s));
            for (std::size_t a = 0; a < 2; ++a) {
                rp[a].push_back(std::log(std::abs(rep.reservoirs[a].q_rp)));
                rh[a].push_back(std::log(std::abs(rep.reservoirs[a].q_rh)));
                nrh[a].push_back(std::log(std::abs(rep.reservoirs[a].q_nrh)));
            }
        }
        bool ok = omega_d < omega0;
        d << "omega_d=" << omega_d << " < Omega0=" << fmt(omega0, 4) << "; slopes";
        for (std::size_t a = 0; a < 2; ++a) {
            const double s_rp = linear_fit(lg, rp[a]).first;
            const double s_rh = linear_fit(lg, rh[a]).first;
            const double s_nrh = linear_fit(lg, nrh[a]).first;
            d << " [res " << a << ": RP " << fmt(s_rp, 4) << " RH " << fmt(s_rh, 4) << " NRH " << fmt(s_nrh, 4) << "]";
            ok = ok && std::abs(s_rp - 1.0) <= 0.15 && std::abs(s_rh - 1.0) <= 0.15 && std::abs(s_nrh - 2.0) <= 0.15;
        }
        return ok;
    });
}

CheckResult acceptance_bounds_oracle() {
    return timed("7 bounds oracle equivalence", 5.0, [](std::ostringstream& d) {
        double worst = 0.0;
        int points = 0;
        for (double nu : {0.25, 0.5, 0.75}) {
            for (double W : {1.0, 5.0, 25.0}) {
                for (double V : {0.5, 1.0, 10.0}) {
                    bounds::CoolingTask task;
                    task.d_S = 2;
                    task.g = 1;
                    task.T = 1.0;
                    task.delta = 1.0;
                    task.W_wc = W;
                    const auto m = bounds::masanes_error_bound(task, bounds::DoSModel::power_law(1.0, nu, V));
                    const double closed = bounds::bath_family_log_error_bound(task, 1.0, nu, V);
                    worst = std::max(worst, rel(m.log_epsilon_min, closed));
                    ++points;
                }
            }
        }
        bounds::CoolingTask hand;
        hand.d_S = 2;
        hand.g = 1;
        hand.T = 1.0;
        hand.delta = 1.0;
        hand.W_wc = 0.575364;
        const double eps = bounds::masanes_error_bound(hand, bounds::DoSModel::power_law(1.0, 0.5, 1.0)).epsilon_min;
        const double e_inv = std::exp(-1.0);
        d << points << " grid points, worst rel log-error " << fmt(worst, 3) << "; hand fixture " << fmt(eps, 8)
          << " vs e^-1 (rel " << fmt(rel(eps, e_inv), 3) << ")";
        return points == 27 && worst <= 1e-6 && rel(eps, e_inv) <= 1e-6;
    });
}

CheckResult acceptance_landauer(std::uint64_t seed) {
    return timed("8 Landauer sampling", 120.0, [seed](std::ostringstream& d) {
        struct Case {
            int dS, dB;
            double beta;
            int trials;
        };
        const std::vector<Case> cases{{2, 2, 1.0, 1500}, {2, 3, 0.5, 1500}, {2, 6, 2.0, 1500}, {3, 2, 1.0, 1500},
                                      {3, 4, 0.7, 1000}, {4, 3, 1.5, 1000}, {4, 6, 1.0, 1000}, {4, 2, 0.0, 1000}};
        int trials = 0, violations = 0;
        double worst = qstat::kInf;
        std::uint64_t s = seed;
        for (const auto& c : cases) {
            const auto r = bounds::landauer_brute_force_oracle(c.dS, c.dB, c.beta, c.trials, s++);
            trials += r.trials;
            violations += r.violations;
            worst = std::min(worst, r.worst_slack);
        }
        d << trials << " unitaries, " << violations << " violations, worst slack " << fmt(worst, 3);
        return trials >= 10000 && violations == 0;
    });
}

CheckResult acceptance_vacancy_renyi(std::uint64_t seed) {
    return timed("9 vacancy/Renyi suite", 30.0, [seed](std::ostringstream& d) {
        auto rng = sampling::make_rng(seed);
        std::uniform_int_distribution<int> dim(2, 4);
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        double additivity = 0.0;
        for (int t = 0; t < 100; ++t) {
            const int d1 = dim(rng), d2 = dim(rng);
            const double beta = 0.2 + 2.0 * unit(rng);
            const CMatrix h1 = sampling::random_hermitian(d1, rng), h2 = sampling::random_hermitian(d2, rng);
            const CMatrix r1 = sampling::random_density_matrix(d1, rng), r2 = sampling::random_density_matrix(d2, rng);
            const CMatrix h = kron(h1, CMatrix::Identity(d2, d2)) + kron(CMatrix::Identity(d1, d1), h2);
            const double joint = qstat::vacancy(qstat::DensityMatrix(kron(r1, r2)), qstat::HamiltonianSpec(h), beta);
            const double parts = qstat::vacancy(qstat::DensityMatrix(r1), qstat::HamiltonianSpec(h1), beta) +
                                 qstat::vacancy(qstat::DensityMatrix(r2), qstat::HamiltonianSpec(h2), beta);
            additivity = std::max(additivity, std::abs(joint - parts));
        }

        const std::vector<double> alphas{0.0, 0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 100.0};
        double mono = 0.0;
        for (int t = 0; t < 200; ++t) {
            const int n = dim(rng) + 1;
            const auto p = sampling::random_distribution(n, rng, 0.2);
            const auto q = sampling::random_distribution(n, rng, 0.0);
            double prev = -qstat::kInf;
            for (double a : alphas) {
                const double s = qstat::renyi_divergence(p, q, a);
                if (std::isfinite(prev) && std::isfinite(s)) mono = std::max(mono, prev - s);
                prev = s;
            }
        }

        int allowed = 0, consistent = 0;
        for (int t = 0; t < 200; ++t) {
            const int n = dim(rng);
            qstat::SpectrumPair res;
            res.energies.resize(static_cast<std::size_t>(n));
            for (auto& e : res.energies) e = 2.0 * unit(rng);
            std::sort(res.energies.begin(), res.energies.end());
            const double beta = 0.3 + 1.5 * unit(rng);
            res.probs = sampling::random_distribution(n, rng, 0.0);
            qstat::SpectrumPair tgt = res;
            tgt.probs = thermal_process(res.probs, res.gibbs(beta), rng);
            const auto rep = qstat::transition_allowed(res, tgt, beta, alphas);
            const auto H = qstat::HamiltonianSpec::diagonal(res.energies);
            const double vr = qstat::vacancy(qstat::DensityMatrix::diagonal(res.probs), H, beta);
            const double vt = qstat::vacancy(qstat::DensityMatrix::diagonal(tgt.probs), H, beta);
            if (rep.allowed) {
                ++allowed;
                if (bounds::cooling_necessary_condition(vr + 1e-12, vt)) ++consistent;
            }
        }

        // independent random pairs: the vacancy ordering is reported, not required
        int random_allowed = 0, random_ordered = 0;
        for (int t = 0; t < 500; ++t) {
            const int n = dim(rng);
            qstat::SpectrumPair res;
            res.energies.resize(static_cast<std::size_t>(n));
            for (auto& e : res.energies) e = 2.0 * unit(rng);
            std::sort(res.energies.begin(), res.energies.end());
            const double beta = 0.3 + 1.5 * unit(rng);
            res.probs = sampling::random_distribution(n, rng, 0.0);
            qstat::SpectrumPair tgt = res;
            tgt.probs = sampling::random_distribution(n, rng, 0.0);
            if (!qstat::transition_allowed(res, tgt, beta, alphas).allowed) continue;
            ++random_allowed;
            const auto H = qstat::HamiltonianSpec::diagonal(res.energies);
            if (qstat::vacancy(qstat::DensityMatrix::diagonal(res.probs), H, beta) + 1e-12 >=
                qstat::vacancy(qstat::DensityMatrix::diagonal(tgt.probs), H, beta))
                ++random_ordered;
        }

        // Qubit target diag(1 - eps, eps): vacancy against ln(1/eps), and the n-copy error bound.
        const std::vector<double> energies{0.0, 1.0};
        const auto H = qstat::HamiltonianSpec::diagonal(energies);
        const double beta = 1.0;
        auto target_vacancy = [&](double eps) {
            const std::vector<double> p{1.0 - eps, eps};
            return qstat::vacancy(qstat::DensityMatrix::diagonal(p), H, beta);
        };
        std::vector<double> ln_inv, vac;
        for (int i = 0; i <= 10; ++i) {
            const double eps = std::pow(10.0, -2.0 - i);
            ln_inv.push_back(std::log(1.0 / eps));
            vac.push_back(target_vacancy(eps));
        }
        const double r2_vac = linear_fit(ln_inv, vac).second;
        const std::vector<double> pr{0.9, 0.1};
        const double v_res = qstat::vacancy(qstat::DensityMatrix::diagonal(pr), H, beta);
        std::vector<double> ns, ln_eps;
        for (int n = 2; n <= 12; ++n) {
            // smallest eps with target vacancy <= n * v_res
            auto f = [&](double le) { return target_vacancy(std::exp(le)) - n * v_res; };
            std::uintmax_t it = 200;
            const auto br = boost::math::tools::toms748_solve(f, -20.0, std::log(0.5),
                                                              boost::math::tools::eps_tolerance<double>(50), it);
            ns.push_back(n);
            ln_eps.push_back(0.5 * (br.first + br.second));
        }
        const auto [rate, r2_n] = linear_fit(ns, ln_eps);

        d << "additivity " << fmt(additivity, 3) << "; alpha-monotonicity defect " << fmt(mono, 3) << "; "
          << consistent << "/" << allowed << " thermal-process targets pass both checks; "
          << random_ordered << "/" << random_allowed << " allowed random pairs vacancy-ordered; R^2 vacancy~ln(1/eps) "
          << fmt(r2_vac, 8) << ", ln eps_min(n) slope " << fmt(rate, 4) << " R^2 " << fmt(r2_n, 8);
        return additivity <= 1e-10 && mono <= 1e-9 && allowed == 200 && consistent == allowed && r2_vac >= 0.999 &&
               r2_n >= 0.999 && rate < 0.0;
    });
}

CheckResult acceptance_thermalization() {
    return timed("10 equilibrium thermalization", 60.0, [](std::ostringstream& d) {
        const double omega0 = 1.0, gamma = 1e-3, T = 1.0, cutoff = 50.0 * omega0;
        network::NetworkInput in;
        in.V0 = RMatrix::Constant(1, 1, omega0 * omega0);
        const auto net = network::build_network(in);
        const currents::Reservoirs res{network::ReservoirSpec::make(
            "bath", T, network::SpectralDensity::ohmic(gamma, cutoff, RMatrix::Identity(1, 1)), {0}, 1)};
        floquet::FloquetEngine engine(net, network::make_markovian_backend(net, res));
        const auto s = currents::covariance_coefficients(engine, res, true);
        const auto cov = currents::covariance_at(s, net, 0.0);
        const double n_xx = omega0 * cov.xx(0, 0) - 0.5;
        const double n_pp = cov.pp(0, 0) / omega0 - 0.5;
        const double planck = currents::planck_occupation(omega0, T);
        d << "n(sigma_xx)=" << fmt(n_xx) << " n(sigma_pp)=" << fmt(n_pp) << " Planck=" << fmt(planck) << " (rel "
          << fmt(rel(n_xx, planck), 3) << ", " << fmt(rel(n_pp, planck), 3) << ")";
        return rel(n_xx, planck) <= 0.02 && rel(n_pp, planck) <= 0.02;
    });
}

std::vector<CheckResult> run_acceptance(const Options& opts) {
    return {acceptance_sideband(),           acceptance_doppler(),         acceptance_heat_cross_oracle(),
            acceptance_first_law(),          acceptance_zero_temperature(), acceptance_coupling_scaling(),
            acceptance_bounds_oracle(),      acceptance_landauer(opts.seed), acceptance_vacancy_renyi(opts.seed + 1),
            acceptance_thermalization()};
}

std::vector<CheckResult> run_suite(const Options& opts) {
    auto out = run_acceptance(opts);

    out.push_back(timed("planck round trip", 0.0, [](std::ostringstream& d) {
        double worst = 0.0;
        for (int i = 0; i <= 110; ++i) {
            const double n = std::pow(10.0, -8.0 + 0.1 * i);
            const double T = cooling::occupation_to_temperature(n, 1.0);
            worst = std::max(worst, rel(currents::planck_occupation(1.0, T), n));
        }
        d << "worst rel " << fmt(worst, 3);
        return worst <= 1e-12;
    }));

    out.push_back(timed("time scaling t^-7", 0.0, [](std::ostringstream& d) {
        bounds::CoolingTask task;
        task.W_wc = 10.0;
        const double r = bounds::time_scaling_bound(task, 2.0, 1.0, 1.0).value /
                         bounds::time_scaling_bound(task, 1.0, 1.0, 1.0).value;
        d << "ratio " << fmt(r, 12);
        return std::abs(r - std::pow(2.0, -7.0)) <= 1e-15;
    }));

    out.push_back(timed("allahverdyan >= scharlau", 0.0, [&opts](std::ostringstream& d) {
        auto rng = sampling::make_rng(opts.seed + 2);
        std::uniform_real_distribution<double> u(0.1, 5.0);
        int bad = 0;
        for (int t = 0; t < 500; ++t) {
            const double T = u(rng), delta = u(rng), J = u(rng);
            const int dB = 2 + t % 30;
            if (bounds::allahverdyan_bound(T, delta, J) < bounds::scharlau_bound(T, delta, J, dB)) ++bad;
        }
        d << bad << " ordering violations in 500 samples";
        return bad == 0;
    }));

    out.push_back(timed("sideband quadratic law", 10.0, [](std::ostringstream& d) {
        cooling::CoolingSetup s;
        const double n1 = cooling::optimize_drive_frequency(s, {1.01, 200.0}).n_bar_min;
        s.gamma *= 0.5;
        const double n2 = cooling::optimize_drive_frequency(s, {1.01, 200.0}).n_bar_min;
        d << "n(gamma)/n(gamma/2) = " << fmt(n1 / n2, 5);
        return std::abs(n1 / n2 - 4.0) <= 1.0;
    }));

    out.push_back(timed("weak vs balance at the sideband optimum", 10.0, [](std::ostringstream& d) {
        cooling::CoolingSetup s;
        const double weak = cooling::min_occupation_weak(s, 99.0);
        const double full = cooling::min_occupation_balance(s, 99.0);
        s.v *= 2.0;
        const double weak2 = cooling::min_occupation_weak(s, 99.0);
        d << "weak " << fmt(weak, 8) << " balance " << fmt(full, 8) << " weak(2v) " << fmt(weak2, 8);
        return rel(full, weak) <= 1e-3 && rel(weak2, weak) <= 1e-12;
    }));

    if (!opts.fixture_dir.empty()) {
        namespace fs = std::filesystem;
        std::vector<fs::path> files;
        if (fs::is_directory(opts.fixture_dir)) {
            for (const auto& e : fs::directory_iterator(opts.fixture_dir))
                if (e.path().extension() == ".json") files.push_back(e.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& p : files) {
            out.push_back(timed("fixture round trip " + p.filename().string(), 0.0, [&p](std::ostringstream& d) {
                const auto a = config::load_config(p.string());
                const std::string s1 = config::serialize(a);
                const std::string s2 = config::serialize(config::parse_config(s1));
                d << "mode " << config::to_string(a.mode) << ", hash " << config::config_hash(a);
                return s1 == s2;
            }));
        }
    }
    return out;
}

void print_results(std::ostream& os, const std::vector<CheckResult>& results) {
    for (const auto& r : results) {
        os << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  [" << std::fixed << std::setprecision(2)
           << r.seconds << " s]  " << std::defaultfloat << r.detail << '\n';
    }
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

} // namespace qcool::validation
