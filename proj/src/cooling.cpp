// cooling.cpp — Single-oscillator cooling limits

#include "qcool/cooling.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "qcool/errors.hpp"

namespace qcool::cooling {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

} // namespace

void CoolingSetup::validate() const {
    if (!positive(omega_m)) throw InvalidInput("cooling: omega_m must be positive");
    if (!positive(omega_0)) throw InvalidInput("cooling: omega_0 must be positive");
    if (!positive(gamma)) throw InvalidInput("cooling: gamma must be positive");
    if (!std::isfinite(v) || v == 0.0) throw InvalidInput("cooling: drive amplitude v must be finite and nonzero");
    if (k_max < 1 || k_max > floquet::kMaxK) throw InvalidInput("cooling: k_max must lie in [1, 25]");
    if (I_B.is_delta()) throw InvalidInput("cooling: the dump density must be continuous");
    I_B.validate(1);
}

network::NetworkSpec CoolingSetup::network(double omega_d) const {
    network::NetworkInput in;
    in.V0 = RMatrix::Constant(1, 1, omega_0 * omega_0);
    in.Vk[1] = CMatrix::Constant(1, 1, cplx(v, 0.0));
    in.omega_d = omega_d;
    return network::build_network(in);
}

network::DampingBackend CoolingSetup::damping() const {
    return network::make_phenomenological_backend(network(1.0), RVector::Constant(1, gamma),
                                                  RVector::Constant(1, omega_0));
}

double CoolingSetup::dump_density(double omega) const {
    if (omega <= 0.0) return 0.0;
    return I_B(omega)(0, 0);
}

const char* to_string(Regime r) {
    switch (r) {
    case Regime::doppler: return "doppler";
    case Regime::sideband: return "sideband";
    case Regime::intermediate: return "intermediate";
    }
    return "unknown";
}

Regime classify(double gamma, double omega_m) {
    const double r = gamma / omega_m;
    if (r >= kDopplerRatio) return Regime::doppler;
    if (r <= kSidebandRatio) return Regime::sideband;
    return Regime::intermediate;
}

const char* to_string(Approximation a) { return a == Approximation::weak ? "weak" : "balance"; }

BalanceReport balance_report(const CoolingSetup& setup, double omega_d) {
    setup.validate();
    if (!positive(omega_d)) throw DomainError("cooling: omega_d must be positive");
    BalanceReport rep;
    rep.k_d = static_cast<int>(std::floor(setup.omega_m / omega_d)) + 1;
    if (rep.k_d > setup.k_max) {
        throw RegimeError("cooling: no heating channel with k <= k_max (k_d = " + std::to_string(rep.k_d) +
                          "); raise k_max");
    }
    const auto net = setup.network(omega_d);
    floquet::FloquetEngine engine(net, setup.damping(), floquet::Method::harmonic_balance, -1);
    if (engine.K() < setup.k_max) {
        engine = floquet::FloquetEngine(net, setup.damping(), floquet::Method::harmonic_balance, setup.k_max);
    }
    rep.K = engine.K();
    const auto c = engine.at(setup.omega_m);

    double pump = 0.0, heat = 0.0, pump_last = 0.0, heat_last = 0.0;
    for (int k = 1; k <= setup.k_max; ++k) {
        const double tp = setup.dump_density(k * omega_d + setup.omega_m) * std::norm(c.A(k)(0, 0));
        pump += tp;
        if (k == setup.k_max) pump_last = tp;
        if (k >= rep.k_d) {
            const double th = setup.dump_density(k * omega_d - setup.omega_m) * std::norm(c.A(-k)(0, 0));
            heat += th;
            if (k == setup.k_max) heat_last = th;
        }
    }
    if (!(pump > 0.0)) throw ModelInvalid("cooling: degenerate setup, every pumping term vanishes");
    rep.ratio = heat / pump;
    rep.n_bar = rep.ratio < 1.0 ? rep.ratio / (1.0 - rep.ratio) : kInf;
    rep.tail_ratio = std::max(pump_last / pump, heat > 0.0 ? heat_last / heat : 0.0);
    return rep;
}

double rp_nrh_ratio(const CoolingSetup& setup, double omega_d, double n_bar) {
    if (!(n_bar >= 0.0)) throw DomainError("cooling: n_bar must be nonnegative");
    const BalanceReport rep = balance_report(setup, omega_d);
    if (n_bar == 0.0) return 0.0;
    if (rep.ratio == 0.0) throw ModelInvalid("cooling: degenerate setup, every heating term vanishes");
    const double planck = std::isinf(n_bar) ? 1.0 : n_bar / (1.0 + n_bar);
    return planck / rep.ratio;
}

double min_occupation_balance(const CoolingSetup& setup, double omega_d) {
    return balance_report(setup, omega_d).n_bar;
}

double min_occupation_weak(const CoolingSetup& setup, double omega_d) {
    setup.validate();
    if (!positive(omega_d)) throw DomainError("cooling: omega_d must be positive");
    if (omega_d <= setup.omega_m) {
        throw RegimeError("cooling: the weak-drive formula needs omega_d > omega_m; use the balance condition");
    }
    const auto pert = floquet::floquet_perturbative(setup.network(omega_d), setup.damping(), setup.omega_m);
    const double pump = setup.dump_density(omega_d + setup.omega_m) * std::norm(pert.coeffs.A(1)(0, 0));
    const double heat = setup.dump_density(omega_d - setup.omega_m) * std::norm(pert.coeffs.A(-1)(0, 0));
    if (!(pump > 0.0)) throw ModelInvalid("cooling: degenerate setup, the pumping term vanishes");
    const double x = heat / pump;
    return x < 1.0 ? x / (1.0 - x) : kInf;
}

CoolingResult optimize_drive_frequency(const CoolingSetup& setup, std::pair<double, double> omega_d_range, int steps,
                                       Approximation approx) {
    setup.validate();
    const auto [lo, hi] = omega_d_range;
    if (!positive(lo) || !std::isfinite(hi) || !(hi > lo)) {
        throw DomainError("cooling: empty drive-frequency range [" + fmt(lo) + ", " + fmt(hi) + "]");
    }
    if (approx == Approximation::weak && lo <= setup.omega_m) {
        throw RegimeError("cooling: the weak-drive scan needs omega_d > omega_m over the whole range");
    }
    if (steps < 3) throw InvalidInput("cooling: scan needs at least 3 steps");

    auto nbar = [&](double wd) {
        return approx == Approximation::weak ? min_occupation_weak(setup, wd) : min_occupation_balance(setup, wd);
    };

    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(steps) + 300);
    for (int i = 0; i < steps; ++i) grid.push_back(lo + (hi - lo) * i / (steps - 1));
    const double centres[] = {setup.omega_0 - setup.omega_m, setup.omega_0, setup.omega_0 + setup.omega_m,
                              setup.omega_0 - setup.gamma};
    constexpr int kCluster = 41;
    for (double c : centres) {
        for (int i = 0; i < kCluster; ++i) {
            const double off = setup.gamma * std::pow(10.0, -3.0 + 5.0 * i / (kCluster - 1));
            for (double x : {c - off, c + off})
                if (x > lo && x < hi) grid.push_back(x);
        }
        if (c > lo && c < hi) grid.push_back(c);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    CoolingResult out;
    out.approximation = approx;
    out.regime = classify(setup.gamma, setup.omega_m);
    std::size_t best = grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double n = nbar(grid[i]);
        ScanPoint p{grid[i], n, 0.0};
        p.T_equiv = std::isinf(n) ? kInf : (n > 0.0 ? occupation_to_temperature(n, setup.omega_m) : 0.0);
        out.scan.push_back(p);
        if (std::isfinite(n) && (best == grid.size() || n < out.scan[best].n_bar)) best = i;
    }
    if (best == grid.size()) throw RegimeError("cooling: no drive frequency in the range cools the mode");

    const double a = grid[best == 0 ? 0 : best - 1];
    const double b = grid[std::min(best + 1, grid.size() - 1)];
    double wd_opt = grid[best];
    double n_opt = out.scan[best].n_bar;
    if (b > a) {
        std::uintmax_t iters = 200;
        const auto r = boost::math::tools::brent_find_minima(nbar, a, b, 24, iters);
        if (r.second < n_opt) {
            wd_opt = r.first;
            n_opt = r.second;
        }
    }
    out.omega_d_opt = wd_opt;
    out.n_bar_min = n_opt;
    out.T_min = n_opt > 0.0 ? occupation_to_temperature(n_opt, setup.omega_m) : 0.0;
    return out;
}

LimitValue doppler_limit(double gamma, double omega_m, double omega_0) {
    if (!positive(gamma) || !positive(omega_m) || !positive(omega_0)) {
        throw DomainError("doppler_limit: gamma, omega_m and omega_0 must be positive");
    }
    if (omega_0 <= gamma) throw DomainError("doppler_limit: needs omega_0 > gamma");
    LimitValue r;
    r.value = gamma / (2.0 * omega_m) * omega_0 / (omega_0 - gamma);
    r.regime_valid = gamma >= kDopplerRatio * omega_m && omega_0 >= kDopplerRatio * omega_m;
    return r;
}

LimitValue sideband_limit(double gamma, double omega_m) {
    if (!(gamma >= 0.0) || !positive(omega_m)) throw DomainError("sideband_limit: needs gamma >= 0 and omega_m > 0");
    LimitValue r;
    r.value = gamma * gamma / (4.0 * omega_m * omega_m);
    r.regime_valid = gamma < omega_m;
    return r;
}

double occupation_to_temperature(double n_bar, double omega_m) {
    if (!positive(n_bar)) throw DomainError("occupation_to_temperature: n_bar must be positive (T = 0 is unattainable)");
    if (!positive(omega_m)) throw DomainError("occupation_to_temperature: omega_m must be positive");
    return omega_m / std::log1p(1.0 / n_bar);
}

void write_scan_csv(std::ostream& os, const CoolingResult& result) {
    os << "omega_d,n_bar,T_equiv\n";
    std::ostringstream line;
    line << std::setprecision(12) << std::scientific;
    for (const auto& p : result.scan) {
        line.str("");
        line << p.omega_d << ',' << p.n_bar << ',' << p.T_equiv << '\n';
        os << line.str();
    }
}

void write_summary_csv(std::ostream& os, const CoolingResult& result) {
    os << "n_bar_min,omega_d_opt,T_min,regime,approximation\n";
    std::ostringstream line;
    line << std::setprecision(12) << std::scientific << result.n_bar_min << ',' << result.omega_d_opt << ','
         << result.T_min << ',' << to_string(result.regime) << ',' << to_string(result.approximation) << '\n';
    os << line.str();
}

} // namespace qcool::cooling
