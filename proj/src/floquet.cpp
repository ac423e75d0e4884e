// floquet.cpp — Floquet coefficients A_k(omega) of the driven network's Green's function

#include "qcool/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>

#include "qcool/errors.hpp"

namespace qcool::floquet {

using network::DampingBackend;
using network::NetworkSpec;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LuSolve {
    CMatrix inverse;
    double condition;
};

LuSolve invert(const CMatrix& d) {
    Eigen::PartialPivLU<CMatrix> lu(d);
    const double rc = lu.rcond();
    LuSolve out;
    out.condition = rc > 0.0 && std::isfinite(rc) ? 1.0 / rc : kInf;
    out.inverse = lu.inverse();
    return out;
}

std::string at_omega(const char* what, double omega, double cond) {
    std::ostringstream os;
    os << what << " at omega = " << omega << " (condition number " << cond << ")";
    return os.str();
}

Coefficients harmonic_balance(const NetworkSpec& net, const network::Stiffness& stiff, double omega,
                              int K, bool check) {
    const Eigen::Index n = net.n_nodes;
    const int nb = 2 * K + 1;
    const Eigen::Index size = nb * n;
    const int kmax = net.max_harmonic();
    std::vector<CMatrix> vm(static_cast<std::size_t>(2 * kmax + 1));
    for (int m = -kmax; m <= kmax; ++m) vm[static_cast<std::size_t>(m + kmax)] = net.V(m);

    CMatrix L = CMatrix::Zero(size, size);
    for (int i = 0; i < nb; ++i) {
        const int k = i - K;
        L.block(i * n, i * n, n, n) = stiff(omega + k * net.omega_d);
        for (int m = -kmax; m <= kmax; ++m) {
            const int j = i - m;
            if (m == 0 || j < 0 || j >= nb) continue;
            L.block(i * n, j * n, n, n) = vm[static_cast<std::size_t>(m + kmax)];
        }
    }
    // Block-row equilibration: the condition number then measures proximity to a
    // resonance rather than the omega^2 growth of the far blocks.
    CMatrix rhs = CMatrix::Zero(size, n);
    rhs.block(K * n, 0, n, n) = CMatrix::Identity(n, n);
    for (int i = 0; i < nb; ++i) {
        const double s = L.block(i * n, 0, n, size).cwiseAbs().maxCoeff();
        if (s > 0.0) {
            L.block(i * n, 0, n, size) /= s;
            rhs.block(i * n, 0, n, n) /= s;
        }
    }
    Eigen::PartialPivLU<CMatrix> lu(L);
    const double rc = lu.rcond();
    Coefficients out;
    out.K = K;
    out.condition = rc > 0.0 && std::isfinite(rc) ? 1.0 / rc : kInf;
    if (check && out.condition > kConditionThreshold) {
        throw InstabilityError(at_omega("harmonic-balance system near resonance", omega, out.condition));
    }
    const CMatrix x = lu.solve(rhs);
    out.coeffs.reserve(static_cast<std::size_t>(nb));
    for (int i = 0; i < nb; ++i) out.coeffs.push_back(x.block(i * n, 0, n, n));
    return out;
}

} // namespace

const char* to_string(Method m) {
    return m == Method::perturbative ? "perturbative" : "harmonic_balance";
}

CMatrix undriven_propagator(const NetworkSpec& net, const DampingBackend& damping, double omega) {
    const auto stiff = network::dynamic_stiffness(net, damping);
    const LuSolve s = invert(stiff(omega));
    if (s.condition > kConditionThreshold) {
        throw InstabilityError(at_omega("undriven propagator singular on the real axis", omega, s.condition));
    }
    return s.inverse;
}

PerturbativeResult floquet_perturbative(const NetworkSpec& net, const DampingBackend& damping,
                                        double omega) {
    const auto stiff = network::dynamic_stiffness(net, damping);
    PerturbativeResult res;
    const int K = net.max_harmonic();
    res.coeffs.K = K;
    res.coeffs.coeffs.assign(static_cast<std::size_t>(2 * K + 1), CMatrix::Zero(net.n_nodes, net.n_nodes));

    const LuSolve g0 = invert(stiff(omega));
    if (g0.condition > kConditionThreshold) {
        throw InstabilityError(at_omega("undriven propagator singular on the real axis", omega, g0.condition));
    }
    res.coeffs.condition = g0.condition;
    res.coeffs.coeffs[static_cast<std::size_t>(K)] = g0.inverse;

    const double v0 = spectral_norm(network::renormalized_potential(net, damping).cast<cplx>());
    for (int k = -K; k <= K; ++k) {
        if (k == 0) continue;
        const CMatrix vk = net.V(k);
        if (vk.cwiseAbs().maxCoeff() == 0.0) continue;
        res.drive_ratio = std::max(res.drive_ratio, spectral_norm(vk) / v0);
        const double shifted = omega + k * net.omega_d;
        const LuSolve gk = invert(stiff(shifted));
        if (gk.condition > kConditionThreshold) {
            throw InstabilityError(at_omega("undriven propagator singular on the real axis", shifted, gk.condition));
        }
        res.coeffs.condition = std::max(res.coeffs.condition, gk.condition);
        res.coeffs.coeffs[static_cast<std::size_t>(k + K)] = -gk.inverse * vk * g0.inverse;
    }
    res.weak_drive = res.drive_ratio <= kWeakDriveRatio;
    return res;
}

Coefficients floquet_harmonic_balance(const NetworkSpec& net, const DampingBackend& damping, double omega,
                                      int K) {
    if (K < net.max_harmonic()) throw InvalidInput("harmonic balance: K must be >= the largest drive harmonic");
    if (K > kMaxK) throw InvalidInput("harmonic balance: K exceeds the supported maximum of 25");
    return harmonic_balance(net, network::dynamic_stiffness(net, damping), omega, K, true);
}

// ---------------------------------------------------------------------------
// FloquetEngine

FloquetEngine::FloquetEngine(NetworkSpec net, DampingBackend damping, Method method, int K)
    : net_(std::move(net)), damping_(std::move(damping)), stiff_(network::dynamic_stiffness(net_, damping_)),
      method_(method) {
    if (method_ == Method::perturbative) {
        K_ = net_.max_harmonic();
        return;
    }
    if (K >= 0) {
        if (K < net_.max_harmonic()) throw InvalidInput("floquet_K must be >= the largest drive harmonic");
        if (K > kMaxK) throw InvalidInput("floquet_K exceeds the supported maximum of 25");
        K_ = K;
        return;
    }
    choose_K();
}

void FloquetEngine::choose_K() {
    if (!net_.driven()) {
        K_ = 0;
        return;
    }
    const auto modes = network::normal_mode_frequencies(net_, damping_);
    std::vector<double> probes{net_.omega_d, 0.5 * net_.omega_d};
    for (double w : modes) {
        probes.push_back(w);
        probes.push_back(0.95 * w);
        probes.push_back(1.05 * w);
        probes.push_back(0.3 * w);
    }
    auto change = [&](int Ka, int Kb) {
        double worst = 0.0;
        for (double w : probes) {
            try {
                const auto a = harmonic_balance(net_, stiff_, w, Ka, true);
                const auto b = harmonic_balance(net_, stiff_, w, Kb, true);
                const double scale = std::max(b.A(0).norm(), 1e-300);
                for (int k : {-1, 1}) worst = std::max(worst, (a.A(k) - b.A(k)).norm() / scale);
            } catch (const InstabilityError&) {
                // Probe sits on a resonance; skip it.
            }
        }
        return worst;
    };
    int K = std::max(3, 3 * net_.max_harmonic());
    K = std::min(K, kMaxK);
    K_converged_ = false;
    while (K < kMaxK) {
        const int next = std::min(2 * K, kMaxK);
        if (change(K, next) < 1e-8) {
            K_converged_ = true;
            break;
        }
        K = next;
    }
    K_ = K;
}

CMatrix FloquetEngine::ghat(double omega) const {
    const LuSolve s = invert(stiff_(omega));
    if (s.condition > kConditionThreshold) {
        throw InstabilityError(at_omega("undriven propagator singular on the real axis", omega, s.condition));
    }
    return s.inverse;
}

Coefficients FloquetEngine::solve(double omega, int K, bool check) const {
    if (method_ == Method::perturbative) {
        if (check) return floquet_perturbative(net_, damping_, omega).coeffs;
        try {
            return floquet_perturbative(net_, damping_, omega).coeffs;
        } catch (const InstabilityError&) {
            Coefficients c;
            c.K = K;
            c.condition = kInf;
            c.coeffs.assign(static_cast<std::size_t>(2 * K + 1), CMatrix::Zero(net_.n_nodes, net_.n_nodes));
            return c;
        }
    }
    if (K == 0) {
        const LuSolve s = invert(stiff_(omega));
        if (check && s.condition > kConditionThreshold) {
            throw InstabilityError(at_omega("undriven propagator singular on the real axis", omega, s.condition));
        }
        Coefficients c;
        c.K = 0;
        c.condition = s.condition;
        c.coeffs.push_back(s.inverse);
        return c;
    }
    return harmonic_balance(net_, stiff_, omega, K, check);
}

Coefficients FloquetEngine::at(double omega) const { return solve(omega, K_, true); }

Coefficients FloquetEngine::at_unchecked(double omega) const { return solve(omega, K_, false); }

std::vector<double> FloquetEngine::resonances() const {
    std::vector<double> out;
    const auto modes = network::normal_mode_frequencies(net_, damping_);
    const int K = net_.driven() ? K_ : 0;
    for (double w : modes) {
        for (int k = -K; k <= K; ++k) {
            out.push_back(w + k * net_.omega_d);
            out.push_back(-w + k * net_.omega_d);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> frequency_grid(const FloquetEngine& engine, double lo, double hi, int background_points,
                                   int cluster_points) {
    if (!(hi > lo)) throw InvalidInput("frequency grid: empty range");
    std::vector<double> g;
    const int nb = std::max(background_points, 2);
    for (int i = 0; i < nb; ++i) g.push_back(lo + (hi - lo) * i / (nb - 1));
    const auto res = engine.resonances();
    double span = 0.0;
    for (double r : res) span = std::max(span, std::abs(r));
    const double reach = 0.25 * std::max(span, 1e-3);
    for (double c : res) {
        if (c < lo || c > hi) continue;
        g.push_back(c);
        for (int j = 0; j < cluster_points; ++j) {
            const double d = reach * std::pow(10.0, -6.0 + 6.0 * j / std::max(cluster_points - 1, 1));
            if (c - d > lo) g.push_back(c - d);
            if (c + d < hi) g.push_back(c + d);
        }
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

FloquetSolution solve_on_grid(const FloquetEngine& engine, std::vector<double> grid, int threads) {
    if (grid.empty()) throw InvalidInput("solve_on_grid: empty grid");
    if (!std::is_sorted(grid.begin(), grid.end()) ||
        std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
        throw InvalidInput("solve_on_grid: grid must be strictly increasing");
    }
    FloquetSolution sol;
    sol.K = engine.K();
    sol.method = engine.method();
    sol.omega_d = engine.net().omega_d;
    sol.stiffness = engine.stiffness();
    sol.grid = std::move(grid);
    const std::size_t n = sol.grid.size();
    sol.coeffs.resize(n);
    sol.condition_numbers.resize(n);

    const int nt = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            sol.coeffs[i] = engine.at_unchecked(sol.grid[i]);
            sol.condition_numbers[i] = sol.coeffs[i].condition;
        }
    };
    if (nt == 1) {
        work(0, n);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + static_cast<std::size_t>(nt) - 1) / static_cast<std::size_t>(nt);
        for (int t = 0; t < nt; ++t) {
            const std::size_t b = static_cast<std::size_t>(t) * chunk, e = std::min(n, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }
    sol.stable = std::all_of(sol.condition_numbers.begin(), sol.condition_numbers.end(),
                             [](double c) { return c <= kConditionThreshold; });
    return sol;
}

// ---------------------------------------------------------------------------
// Stability

namespace {

// Largest |Floquet multiplier| of M2 x'' + C x' + (K0 + V_osc(t)) x = 0 over one drive period.
double monodromy_radius(const NetworkSpec& net, const network::Stiffness& s) {
    const Eigen::Index n = net.n_nodes;
    const RMatrix m2inv = s.M2.inverse();
    const double period = 2.0 * std::numbers::pi / net.omega_d;
    double wmax = net.omega_d * net.max_harmonic();
    {
        Eigen::EigenSolver<RMatrix> es(m2inv * s.K0);
        for (Eigen::Index i = 0; i < n; ++i) wmax = std::max(wmax, std::sqrt(std::abs(es.eigenvalues()(i))));
        wmax = std::max(wmax, (m2inv * s.C).cwiseAbs().maxCoeff());
    }
    const int steps = std::max(2000, static_cast<int>(std::ceil(60.0 * wmax * period)));
    const double h = period / steps;

    auto rhs = [&](double t, const RMatrix& z) {
        RMatrix v = s.K0;
        for (const auto& [k, vk] : net.Vk) {
            const cplx ph = std::exp(cplx(0.0, k * net.omega_d * t));
            v += 2.0 * (vk * ph).real();
        }
        RMatrix dz(2 * n, z.cols());
        dz.topRows(n) = z.bottomRows(n);
        dz.bottomRows(n) = -m2inv * (s.C * z.bottomRows(n) + v * z.topRows(n));
        return dz;
    };
    RMatrix z = RMatrix::Identity(2 * n, 2 * n);
    double t = 0.0;
    for (int i = 0; i < steps; ++i) {
        const RMatrix k1 = rhs(t, z);
        const RMatrix k2 = rhs(t + 0.5 * h, z + 0.5 * h * k1);
        const RMatrix k3 = rhs(t + 0.5 * h, z + 0.5 * h * k2);
        const RMatrix k4 = rhs(t + h, z + h * k3);
        z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
    }
    Eigen::EigenSolver<RMatrix> es(z);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

} // namespace

StabilityReport stability_check(const NetworkSpec& net, const DampingBackend& damping,
                                const std::vector<double>& omega_grid, int K) {
    StabilityReport rep;
    const auto stiff = network::dynamic_stiffness(net, damping);
    std::ostringstream detail;

    for (double w : omega_grid) {
        const LuSolve s = invert(stiff(w));
        if (s.condition > rep.worst_condition) {
            rep.worst_condition = s.condition;
            rep.worst_omega = w;
        }
        if (s.condition > kConditionThreshold) rep.real_axis_pole = true;
        if (net.driven()) {
            const int Kuse = std::clamp(K, std::max(1, net.max_harmonic()), kMaxK);
            const Coefficients c = harmonic_balance(net, stiff, w, Kuse, false);
            if (c.condition > rep.worst_condition) {
                rep.worst_condition = c.condition;
                rep.worst_omega = w;
            }
            if (c.condition > kConditionThreshold) rep.condition_exceeded = true;
        }
    }

    // First-order system eigenvalues (undriven) or Floquet multipliers (driven).
    const Eigen::Index n = net.n_nodes;
    if (net.driven()) {
        rep.monodromy_radius = monodromy_radius(net, stiff);
        rep.monodromy_unstable = !(rep.monodromy_radius < 1.0 - 1e-12);
    } else {
        const RMatrix m2inv = stiff.M2.inverse();
        RMatrix a = RMatrix::Zero(2 * n, 2 * n);
        a.topRightCorner(n, n) = RMatrix::Identity(n, n);
        a.bottomLeftCorner(n, n) = -m2inv * stiff.K0;
        a.bottomRightCorner(n, n) = -m2inv * stiff.C;
        Eigen::EigenSolver<RMatrix> es(a);
        const double max_re = es.eigenvalues().real().maxCoeff();
        rep.monodromy_radius = std::exp(max_re);
        rep.monodromy_unstable = !(max_re < -1e-14);
    }

    if (rep.real_axis_pole) detail << "undriven propagator singular near omega=" << rep.worst_omega << "; ";
    if (rep.condition_exceeded) detail << "harmonic-balance condition number " << rep.worst_condition << " > 1e12; ";
    if (rep.monodromy_unstable) detail << "Floquet multiplier radius " << rep.monodromy_radius << " >= 1; ";
    rep.stable = !(rep.real_axis_pole || rep.condition_exceeded || rep.monodromy_unstable);
    rep.detail = rep.stable ? "stable" : detail.str();
    return rep;
}

// ---------------------------------------------------------------------------
// Time domain

namespace {

// phi0 = int_0^1 e^{i theta s} ds, phi1 = int_0^1 s e^{i theta s} ds.
void filon_weights(double theta, cplx& phi0, cplx& phi1) {
    if (std::abs(theta) < 0.05) {
        phi0 = 0.0;
        phi1 = 0.0;
        cplx term(1.0, 0.0);  // (i theta)^n / n!
        for (int n = 0; n < 10; ++n) {
            phi0 += term / static_cast<double>(n + 1);
            phi1 += term / static_cast<double>(n + 2);
            term *= cplx(0.0, theta) / static_cast<double>(n + 1);
        }
        return;
    }
    const cplx e = std::exp(cplx(0.0, theta));
    const cplx it(0.0, theta);
    phi0 = (e - 1.0) / it;
    phi1 = e / it + (e - 1.0) / (theta * theta);
}

} // namespace

TimeDomainResult greens_time_domain(const FloquetSolution& sol, double t, double t_prime) {
    if (sol.grid.size() < 2) throw InvalidInput("greens_time_domain: grid too small");
    if (!sol.stable) throw InstabilityError("greens_time_domain: solution is flagged unstable");
    const double tau = t - t_prime;
    const Eigen::Index n = sol.coeffs.front().A(0).rows();
    const RMatrix m2inv = sol.stiffness.M2.inverse();
    const double lo = sol.grid.front(), hi = sol.grid.back();

    // Subtracted asymptote -M2^{-1} / (omega^2 + c^2); its transform is -M2^{-1} e^{-c|tau|} / (2c).
    double c = 1.0;
    {
        Eigen::EigenSolver<RMatrix> es(m2inv * sol.stiffness.K0);
        for (Eigen::Index i = 0; i < n; ++i) c = std::max(c, std::sqrt(std::abs(es.eigenvalues()(i))));
    }

    CMatrix total = CMatrix::Zero(n, n);
    for (int k = -sol.K; k <= sol.K; ++k) {
        CMatrix acc = CMatrix::Zero(n, n);
        auto value = [&](std::size_t i) {
            CMatrix a = sol.A(k, i);
            if (k == 0) {
                const double w = sol.grid[i];
                a += (m2inv / (w * w + c * c)).cast<cplx>();
            }
            return a;
        };
        CMatrix fa = value(0);
        for (std::size_t i = 0; i + 1 < sol.grid.size(); ++i) {
            const double a = sol.grid[i], h = sol.grid[i + 1] - a;
            CMatrix fb = value(i + 1);
            cplx phi0, phi1;
            filon_weights(h * tau, phi0, phi1);
            acc += std::exp(cplx(0.0, a * tau)) * h * (fa * phi0 + (fb - fa) * phi1);
            fa = std::move(fb);
        }
        total += acc * std::exp(cplx(0.0, k * sol.omega_d * t));
    }
    total /= 2.0 * std::numbers::pi;
    total += (-m2inv * std::exp(-c * std::abs(tau)) / (2.0 * c)).cast<cplx>();

    TimeDomainResult out;
    out.G = total.real();
    out.imag_residual = total.imag().cwiseAbs().maxCoeff();
    double span = c;
    span = std::max(span, sol.K * sol.omega_d);
    out.coverage_ok = -lo >= 20.0 * span && hi >= 20.0 * span;
    return out;
}

} // namespace qcool::floquet
