// currents.cpp — Transfer functions, RP/RH/NRH heat currents, covariances, power

#include "qcool/currents.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "qcool/errors.hpp"

namespace qcool::currents {

using floquet::Coefficients;
using floquet::FloquetEngine;

double planck_occupation(double omega, double T) {
    if (!(omega > 0.0)) throw DomainError("planck_occupation: omega must be positive");
    if (!(T >= 0.0)) throw DomainError("planck_occupation: temperature must be nonnegative");
    if (T == 0.0) return 0.0;
    return 1.0 / std::expm1(omega / T);
}

double coth_half(double omega, double T) {
    if (!(omega > 0.0)) throw DomainError("coth_half: omega must be positive");
    if (T == 0.0) return 1.0;
    const double x = omega / (2.0 * T);
    if (x > 20.0) return 1.0 + 2.0 * std::exp(-2.0 * x);
    return 1.0 / std::tanh(x);
}

double transfer_function(const Coefficients& c, double omega_d, const ReservoirSpec& a, const ReservoirSpec& b,
                         int k, double omega) {
    if (a.density.is_delta() || b.density.is_delta()) {
        throw ContractError("transfer_function: delta_mode densities are integrated symbolically, not queried pointwise");
    }
    if (omega < 0.0) throw DomainError("transfer_function: omega must be nonnegative");
    if (!c.has(k)) return 0.0;
    const CMatrix& A = c.A(k);
    const RMatrix ia = a.density(std::abs(omega + k * omega_d));
    const RMatrix ib = b.density(omega);
    return 0.5 * std::numbers::pi * (ia.cast<cplx>() * A * ib.cast<cplx>() * A.adjoint()).trace().real();
}

double transfer_function(const FloquetEngine& engine, const Reservoirs& res, int a, int b, int k, double omega) {
    const int n = static_cast<int>(res.size());
    if (a < 0 || a >= n || b < 0 || b >= n) throw InvalidInput("transfer_function: reservoir index out of range");
    return transfer_function(engine.at(omega), engine.net().omega_d, res[static_cast<std::size_t>(a)],
                             res[static_cast<std::size_t>(b)], k, omega);
}

namespace {

constexpr double kPiHalf = 0.5 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

using Weight = std::function<double(double)>;

// One contribution int_lo^hi w(omega) p^{(k)}_{ab}(omega) d omega added to `comp` (and `shell`).
struct Term {
    int a, b, k;
    double lo, hi;
    Weight w;
    int comp;
    int shell;
};

struct Want {
    bool rp{true}, rh{true}, nrh{true}, direct{true}, power{true};
};

// Component layout: per reservoir [rp, rh, nrh, shell, direct], then power.
constexpr int kPerRes = 5;
int comp_of(int alpha, int slot) { return alpha * kPerRes + slot; }

class Engine {
public:
    Engine(const FloquetEngine& fe, const Reservoirs& res) : fe_(fe), res_(res) {
        const auto& net = fe.net();
        wd_ = net.omega_d;
        K_ = fe.K();
        for (int m = -net.max_harmonic(); m <= net.max_harmonic(); ++m) {
            const CMatrix v = net.V(m);
            if (v.cwiseAbs().maxCoeff() > 0.0) harmonics_.push_back({m, v});
        }
    }

    const Coefficients& coeffs_at(double w) {
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(w, fe_.at(w)).first->second;
    }

    // p for a possibly-delta pair is never requested here.
    double p(const Coefficients& c, const RMatrix& ia, const RMatrix& ib, int k) const {
        if (!c.has(k)) return 0.0;
        const CMatrix& A = c.A(k);
        return kPiHalf * (ia.cast<cplx>() * A * ib.cast<cplx>() * A.adjoint()).trace().real();
    }

    std::vector<Term> terms(const Want& want, int only) const {
        std::vector<Term> t;
        const int nr = static_cast<int>(res_.size());
        const double wd = wd_;
        for (int a = 0; a < nr; ++a) {
            if (only >= 0 && a != only) continue;
            const double Ta = res_[static_cast<std::size_t>(a)].temperature;
            const int shell = comp_of(a, 3);
            auto is_shell = [&](int k) { return std::abs(k) == K_ && K_ > 0 ? shell : -1; };
            for (int k = -K_; k <= K_; ++k) {
                const double lo = std::max(0.0, -k * wd);
                if (want.rp) {
                    for (int b = 0; b < nr; ++b) {
                        if (b == a) continue;
                        const double Tb = res_[static_cast<std::size_t>(b)].temperature;
                        t.push_back({b, a, k, lo, kInf,
                                     [Ta](double w) { return w * planck_occupation(w, Ta); }, comp_of(a, 0),
                                     is_shell(k)});
                        t.push_back({a, b, k, lo, kInf,
                                     [Tb, k, wd](double w) { return -(w + k * wd) * planck_occupation(w, Tb); },
                                     comp_of(a, 0), is_shell(k)});
                    }
                }
                if (want.rh && k != 0) {
                    t.push_back({a, a, k, lo, kInf,
                                 [Ta, k, wd](double w) { return -k * wd * planck_occupation(w, Ta); }, comp_of(a, 1),
                                 is_shell(k)});
                }
            }
            if (want.nrh) {
                for (int k = 1; k <= K_; ++k) {
                    const double hi = k * wd;
                    t.push_back({a, a, -k, 0.0, hi,
                                 [Ta, hi](double w) { return -hi * (planck_occupation(w, Ta) + 0.5); }, comp_of(a, 2),
                                 is_shell(k)});
                    for (int b = 0; b < nr; ++b) {
                        if (b == a) continue;
                        const double Tb = res_[static_cast<std::size_t>(b)].temperature;
                        t.push_back({a, b, -k, 0.0, hi,
                                     [Tb, hi](double w) { return -(hi - w) * (planck_occupation(w, Tb) + 0.5); },
                                     comp_of(a, 2), is_shell(k)});
                        t.push_back({b, a, -k, 0.0, hi,
                                     [Ta](double w) { return -w * (planck_occupation(w, Ta) + 0.5); }, comp_of(a, 2),
                                     is_shell(k)});
                    }
                }
            }
        }
        return t;
    }

    // Im Tr[X V_m A_j I A_{j+m}^dagger] weighted, summed over j and the drive harmonics.
    void add_direct_power(const Coefficients& c, const RMatrix& ib, double w, double weight, const Want& want,
                          int only, RVector& out) const {
        const int nr = static_cast<int>(res_.size());
        const CMatrix icx = ib.cast<cplx>();
        for (const auto& [m, vm] : harmonics_) {
            for (int j = -K_; j <= K_; ++j) {
                const int k = j + m;
                if (k < -K_ || k > K_) continue;
                const CMatrix x = c.A(j) * icx * c.A(k).adjoint();   // A_j I A_k^dagger
                const CMatrix vx = vm * x;
                if (want.direct) {
                    const double f = weight * (w + k * wd_);
                    for (int a = 0; a < nr; ++a) {
                        if (only >= 0 && a != only) continue;
                        const RMatrix& P = res_[static_cast<std::size_t>(a)].projector;
                        out(comp_of(a, 4)) += f * (P.cast<cplx>() * vx).trace().imag();
                    }
                }
                if (want.power && m != 0) {
                    out(nr * kPerRes) += -0.5 * m * wd_ * weight * vx.trace().imag();
                }
            }
        }
    }

    int ncomp() const { return static_cast<int>(res_.size()) * kPerRes + 1; }

    std::vector<double> breakpoints() const {
        std::vector<double> b;
        for (int k = 1; k <= K_; ++k) b.push_back(k * wd_);
        for (double r : fe_.resonances())
            if (r > 0.0) b.push_back(r);
        for (const auto& r : res_) {
            const auto& d = r.density;
            if (d.kind == network::DensityKind::ohmic && d.cutoff > 0.0 && std::isfinite(d.cutoff)) b.push_back(d.cutoff);
            if (d.kind == network::DensityKind::table) {
                b.push_back(d.table_omega.front());
                b.push_back(d.table_omega.back());
                for (int k = -K_; k <= K_; ++k) {
                    for (double x : {d.table_omega.front(), d.table_omega.back()}) {
                        for (double s : {x - k * wd_, -x - k * wd_})
                            if (s > 0.0) b.push_back(s);
                    }
                }
            }
        }
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        return b;
    }

    const FloquetEngine& fe_;
    const Reservoirs& res_;
    double wd_{0.0};
    int K_{0};
    std::vector<std::pair<int, CMatrix>> harmonics_;
    std::map<double, Coefficients> cache_;
};

bool inside(double w, double lo, double hi) {
    const double scale = std::max({1.0, std::abs(lo), std::isfinite(hi) ? std::abs(hi) : 0.0});
    const double tol = 1e-12 * scale;
    if (std::abs(w - lo) <= tol || (std::isfinite(hi) && std::abs(w - hi) <= tol)) {
        if (w > tol) {
            std::ostringstream os;
            os << "delta mode at omega=" << w << " coincides with an integration limit";
            throw ModelInvalid(os.str());
        }
        return false;
    }
    return w > lo && w < hi;
}

struct Raw {
    RVector value, error;
    int evaluations{0};
};

Raw integrate_all(Engine& eng, const std::vector<Term>& terms, const Want& want, int only, const Options& opts) {
    const auto& res = eng.res_;
    const int nr = static_cast<int>(res.size());
    const int K = eng.K_;
    const double wd = eng.wd_;

    std::vector<const Term*> cont;
    for (const auto& t : terms)
        if (!res[static_cast<std::size_t>(t.a)].density.is_delta() && !res[static_cast<std::size_t>(t.b)].density.is_delta())
            cont.push_back(&t);
    const bool any_cont_res = std::any_of(res.begin(), res.end(), [](const ReservoirSpec& r) { return !r.density.is_delta(); });
    const bool need_dp = (want.direct || want.power) && any_cont_res;

    const quad::VecFn f = [&](double w) {
        RVector out = RVector::Zero(eng.ncomp());
        const Coefficients c = eng.fe_.at(w);
        std::vector<RMatrix> inner(static_cast<std::size_t>(nr));
        for (int b = 0; b < nr; ++b)
            if (!res[static_cast<std::size_t>(b)].density.is_delta()) inner[static_cast<std::size_t>(b)] = res[static_cast<std::size_t>(b)].density(w);
        std::map<std::pair<int, int>, RMatrix> outer;
        for (const Term* t : cont) {
            if (!(w >= t->lo && w <= t->hi)) continue;
            auto key = std::make_pair(t->a, t->k);
            auto it = outer.find(key);
            if (it == outer.end()) it = outer.emplace(key, res[static_cast<std::size_t>(t->a)].density(std::abs(w + t->k * wd))).first;
            const double v = t->w(w) * eng.p(c, it->second, inner[static_cast<std::size_t>(t->b)], t->k);
            out(t->comp) += v;
            if (t->shell >= 0) out(t->shell) += v;
        }
        if (need_dp) {
            for (int b = 0; b < nr; ++b) {
                const auto& r = res[static_cast<std::size_t>(b)];
                if (r.density.is_delta()) continue;
                eng.add_direct_power(c, inner[static_cast<std::size_t>(b)], w, 0.5 * coth_half(w, r.temperature), want,
                                     only, out);
            }
        }
        return out;
    };

    Raw raw;
    raw.value = RVector::Zero(eng.ncomp());
    raw.error = RVector::Zero(eng.ncomp());
    if (!cont.empty() || need_dp) {
        const auto brk = eng.breakpoints();
        const quad::Result q = quad::integrate(f, eng.ncomp(), 0.0, kInf, brk, opts.quad);
        if (!q.converged) {
            Eigen::Index worst = 0;
            (q.error.array() / (q.value.array().abs() * opts.quad.rel_tol).max(opts.quad.abs_tol)).maxCoeff(&worst);
            std::ostringstream os;
            os << "heat-current quadrature did not converge (component " << worst << ": value " << q.value(worst)
               << ", error " << q.error(worst) << ", " << q.intervals << " intervals)";
            throw AccuracyError(os.str());
        }
        raw.value = q.value;
        raw.error = q.error;
        raw.evaluations = q.evaluations;
    }

    // Delta-mode reservoirs: the integrals collapse onto the mode frequency.
    for (const auto& t : terms) {
        const auto& ra = res[static_cast<std::size_t>(t.a)];
        const auto& rb = res[static_cast<std::size_t>(t.b)];
        const bool da = ra.density.is_delta(), db = rb.density.is_delta();
        if (!da && !db) continue;
        double v = 0.0;
        if (db && da) {
            const double wb = rb.density.omega_m;
            if (inside(wb, t.lo, t.hi) && std::abs(std::abs(wb + t.k * wd) - ra.density.omega_m) <= 1e-9 * std::max(1.0, wb)) {
                throw ModelInvalid("coincident delta modes make the heat current singular");
            }
        } else if (db) {
            const double wb = rb.density.omega_m;
            if (!inside(wb, t.lo, t.hi)) continue;
            const Coefficients& c = eng.coeffs_at(wb);
            v = t.w(wb) * eng.p(c, ra.density(std::abs(wb + t.k * wd)), rb.density.delta_weight(), t.k);
        } else {
            const double wm = ra.density.omega_m;
            for (double root : {wm - t.k * wd, -wm - t.k * wd}) {
                if (!(root > 0.0) || !inside(root, t.lo, t.hi)) continue;
                const Coefficients& c = eng.coeffs_at(root);
                v += t.w(root) * eng.p(c, ra.density.delta_weight(), rb.density(root), t.k);
            }
        }
        raw.value(t.comp) += v;
        if (t.shell >= 0) raw.value(t.shell) += v;
    }
    if (want.direct || want.power) {
        for (int b = 0; b < nr; ++b) {
            const auto& r = res[static_cast<std::size_t>(b)];
            if (!r.density.is_delta()) continue;
            const double wm = r.density.omega_m;
            const Coefficients& c = eng.coeffs_at(wm);
            eng.add_direct_power(c, r.density.delta_weight(), wm, 0.5 * coth_half(wm, r.temperature), want, only,
                                 raw.value);
        }
    }
    (void)K;
    return raw;
}

HeatCurrentReport compute(const FloquetEngine& fe, const Reservoirs& res, const Options& opts, Want want, int only) {
    if (res.empty()) throw ContractError("heat currents need at least one reservoir");
    for (const auto& r : res) r.validate(fe.net().n_nodes);
    if (only >= static_cast<int>(res.size())) throw InvalidInput("reservoir index out of range");

    HeatCurrentReport rep;
    rep.K = fe.K();
    rep.method = fe.method();
    rep.nrh_included = fe.net().time_reversal;
    if (!rep.nrh_included) want.nrh = false;
    if (!fe.net().driven()) want.power = false;

    Engine eng(fe, res);
    const auto terms = eng.terms(want, only);
    const Raw raw = integrate_all(eng, terms, want, only, opts);
    rep.evaluations = raw.evaluations;

    const int nr = static_cast<int>(res.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int a = 0; a < nr; ++a) {
        ReservoirCurrents rc;
        rc.label = res[static_cast<std::size_t>(a)].label;
        rc.q_rp = raw.value(comp_of(a, 0));
        rc.q_rh = raw.value(comp_of(a, 1));
        rc.q_nrh = rep.nrh_included ? raw.value(comp_of(a, 2)) : nan;
        rc.q_total = rep.nrh_included ? rc.q_rp + rc.q_rh + rc.q_nrh : nan;
        rc.q_direct = want.direct ? raw.value(comp_of(a, 4)) : nan;
        rc.err_estimate = raw.error(comp_of(a, 0)) + raw.error(comp_of(a, 1)) + raw.error(comp_of(a, 2));
        const double shell = raw.value(comp_of(a, 3));
        const double total = rep.nrh_included ? rc.q_total : rc.q_rp + rc.q_rh;
        rc.tail_ratio = std::abs(total) > 0.0 ? std::abs(shell) / std::abs(total) : 0.0;
        const bool check_tail = fe.method() == floquet::Method::harmonic_balance && fe.net().driven() &&
                                (only < 0 || a == only) && std::abs(total) > 1e3 * opts.quad.abs_tol;
        if (check_tail && rc.tail_ratio > opts.tail_tol) {
            std::ostringstream os;
            os << "k-sum truncation: last shell is " << rc.tail_ratio << " of the total for reservoir '" << rc.label
               << "' (K = " << rep.K << ")";
            throw AccuracyError(os.str());
        }
        rep.reservoirs.push_back(rc);
    }
    double sum = 0.0;
    for (const auto& rc : rep.reservoirs) sum += rep.nrh_included ? rc.q_total : rc.q_direct;
    rep.power = -sum;
    if (want.power) {
        rep.power_sigma_xx = raw.value(nr * kPerRes);
        rep.power_err = raw.error(nr * kPerRes);
        rep.has_power_sigma_xx = true;
    }
    return rep;
}

} // namespace

HeatCurrentReport heat_report(const FloquetEngine& engine, const Reservoirs& res, const Options& opts) {
    Want want;
    want.direct = opts.direct;
    want.power = opts.power_from_sigma_xx;
    return compute(engine, res, opts, want, -1);
}

namespace {
Want only_want(bool rp, bool rh, bool nrh, bool direct) {
    Want w;
    w.rp = rp;
    w.rh = rh;
    w.nrh = nrh;
    w.direct = direct;
    w.power = false;
    return w;
}
void check_alpha(const Reservoirs& res, int alpha) {
    if (alpha < 0 || alpha >= static_cast<int>(res.size())) throw InvalidInput("reservoir index out of range");
}
} // namespace

double heat_rp(const FloquetEngine& engine, const Reservoirs& res, int alpha, const Options& opts) {
    check_alpha(res, alpha);
    Options o = opts;
    o.tail_tol = kInf;
    return compute(engine, res, o, only_want(true, false, false, false), alpha).reservoirs[static_cast<std::size_t>(alpha)].q_rp;
}

double heat_rh(const FloquetEngine& engine, const Reservoirs& res, int alpha, const Options& opts) {
    check_alpha(res, alpha);
    Options o = opts;
    o.tail_tol = kInf;
    return compute(engine, res, o, only_want(false, true, false, false), alpha).reservoirs[static_cast<std::size_t>(alpha)].q_rh;
}

double heat_nrh(const FloquetEngine& engine, const Reservoirs& res, int alpha, const Options& opts) {
    check_alpha(res, alpha);
    if (!engine.net().time_reversal) {
        throw ContractError("heat_nrh requires a time-reversal invariant drive (V_{-k} = V_k)");
    }
    Options o = opts;
    o.tail_tol = kInf;
    return compute(engine, res, o, only_want(false, false, true, false), alpha).reservoirs[static_cast<std::size_t>(alpha)].q_nrh;
}

double heat_direct(const FloquetEngine& engine, const Reservoirs& res, int alpha, const Options& opts) {
    check_alpha(res, alpha);
    Options o = opts;
    o.tail_tol = kInf;
    return compute(engine, res, o, only_want(false, false, false, true), alpha).reservoirs[static_cast<std::size_t>(alpha)].q_direct;
}

// ---------------------------------------------------------------------------
// Covariances

CovarianceCoefficients covariance_coefficients(const FloquetEngine& engine, const Reservoirs& res, bool with_pp,
                                               const Options& opts) {
    if (res.empty()) throw ContractError("covariances need at least one reservoir");
    CovarianceCoefficients s;
    s.K = engine.K();
    s.n = engine.net().n_nodes;
    s.omega_d = engine.net().omega_d;
    s.has_pp = with_pp;
    const int nk = 2 * s.K + 1;
    const Eigen::Index n = s.n;
    const Eigen::Index block = 2 * n * n;
    const int nkinds = with_pp ? 3 : 2;
    const Eigen::Index dim = static_cast<Eigen::Index>(nk) * nk * block * nkinds;

    // Packs Re/Im of  w_kind * A_j I A_k^dagger  into `out`.
    auto accumulate = [&](const Coefficients& c, const RMatrix& ib, double w, double weight, RVector& out) {
        const CMatrix icx = ib.cast<cplx>();
        Eigen::Index pos = 0;
        for (int kind = 0; kind < nkinds; ++kind) {
            for (int j = -s.K; j <= s.K; ++j) {
                for (int k = -s.K; k <= s.K; ++k) {
                    double f = weight;
                    if (kind >= 1) f *= (w + k * s.omega_d);
                    if (kind == 2) f *= (w + j * s.omega_d);
                    const CMatrix x = f * (c.A(j) * icx * c.A(k).adjoint());
                    for (Eigen::Index q = 0; q < n * n; ++q) {
                        out(pos++) += x(q % n, q / n).real();
                        out(pos++) += x(q % n, q / n).imag();
                    }
                }
            }
        }
    };

    RVector total = RVector::Zero(dim);
    const bool any_cont = std::any_of(res.begin(), res.end(), [](const ReservoirSpec& r) { return !r.density.is_delta(); });
    if (any_cont) {
        Engine eng(engine, res);
        const quad::VecFn f = [&](double w) {
            RVector out = RVector::Zero(dim);
            const Coefficients c = engine.at(w);
            for (const auto& r : res) {
                if (r.density.is_delta()) continue;
                accumulate(c, r.density(w), w, 0.5 * coth_half(w, r.temperature), out);
            }
            return out;
        };
        const quad::Result q = quad::integrate(f, dim, 0.0, kInf, eng.breakpoints(), opts.quad);
        if (!q.converged) throw AccuracyError("covariance quadrature did not converge (sigma^pp needs a finite ohmic cutoff)");
        total = q.value;
    }
    for (const auto& r : res) {
        if (!r.density.is_delta()) continue;
        const double wm = r.density.omega_m;
        accumulate(engine.at(wm), r.density.delta_weight(), wm, 0.5 * coth_half(wm, r.temperature), total);
    }

    Eigen::Index pos = 0;
    for (int kind = 0; kind < nkinds; ++kind) {
        auto& dst = kind == 0 ? s.xx : (kind == 1 ? s.xp : s.pp);
        dst.assign(static_cast<std::size_t>(nk * nk), CMatrix::Zero(n, n));
        for (int j = -s.K; j <= s.K; ++j) {
            for (int k = -s.K; k <= s.K; ++k) {
                CMatrix& m = dst[s.index(j, k)];
                for (Eigen::Index q = 0; q < n * n; ++q) {
                    m(q % n, q / n) = cplx(total(pos), total(pos + 1));
                    pos += 2;
                }
            }
        }
    }
    return s;
}

Covariance covariance_at(const CovarianceCoefficients& s, const network::NetworkSpec& net, double t) {
    const Eigen::Index n = s.n;
    CMatrix xx = CMatrix::Zero(n, n), xp = CMatrix::Zero(n, n), pp = CMatrix::Zero(n, n);
    for (int j = -s.K; j <= s.K; ++j) {
        for (int k = -s.K; k <= s.K; ++k) {
            const cplx ph = std::exp(cplx(0.0, s.omega_d * (j - k) * t));
            xx += s.xx[s.index(j, k)] * ph;
            xp += s.xp[s.index(j, k)] * ph;
            if (s.has_pp) pp += s.pp[s.index(j, k)] * ph;
        }
    }
    const RMatrix M = net.mass_matrix();
    Covariance out;
    out.xx = xx.real();
    out.xp = (cplx(0.0, -1.0) * xp).real() * M;
    out.pp = s.has_pp ? RMatrix(M * pp.real() * M) : RMatrix::Zero(n, n);
    return out;
}

double heat_direct_from(const CovarianceCoefficients& s, const network::NetworkSpec& net, const ReservoirSpec& r) {
    double q = 0.0;
    const CMatrix P = r.projector.cast<cplx>();
    for (int j = -s.K; j <= s.K; ++j) {
        for (int k = -s.K; k <= s.K; ++k) {
            if (std::abs(k - j) > net.max_harmonic()) continue;
            q += (P * net.V(k - j) * s.xp[s.index(j, k)]).trace().imag();
        }
    }
    return q;
}

double power_from(const CovarianceCoefficients& s, const network::NetworkSpec& net) {
    double w = 0.0;
    for (int j = -s.K; j <= s.K; ++j) {
        for (int k = -s.K; k <= s.K; ++k) {
            const int m = k - j;
            if (m == 0 || std::abs(m) > net.max_harmonic()) continue;
            w += -0.5 * m * s.omega_d * (net.V(m) * s.xx[s.index(j, k)]).trace().imag();
        }
    }
    return w;
}

double average_power(const HeatCurrentReport& report, double closure_tol) {
    if (report.reservoirs.empty()) throw ContractError("average_power: report has no reservoirs");
    if (report.has_power_sigma_xx) {
        double qmax = 0.0;
        for (const auto& r : report.reservoirs) qmax = std::max(qmax, std::abs(report.nrh_included ? r.q_total : r.q_direct));
        const double gap = std::abs(report.power_sigma_xx - report.power);
        if (qmax > 0.0 && gap > closure_tol * qmax) {
            std::ostringstream os;
            os << "first-law closure violated: W(sum Q) = " << report.power << ", W(sigma_xx) = " << report.power_sigma_xx;
            throw AccuracyError(os.str());
        }
    }
    return report.power;
}

bool cooling_condition(const HeatCurrentReport& report, int alpha) {
    if (alpha < 0 || alpha >= static_cast<int>(report.reservoirs.size())) throw InvalidInput("reservoir index out of range");
    const auto& r = report.reservoirs[static_cast<std::size_t>(alpha)];
    if (std::isnan(r.q_nrh)) throw ContractError("cooling_condition needs the NRH term (time-reversal invariant drive)");
    return r.q_rp > std::abs(r.q_rh + r.q_nrh);
}

void write_csv(std::ostream& os, const HeatCurrentReport& report) {
    os << "reservoir,q_rp,q_rh,q_nrh,q_total,q_direct,power,err_estimate\n";
    std::ostringstream line;
    line << std::setprecision(12) << std::scientific;
    for (const auto& r : report.reservoirs) {
        line.str("");
        line << r.label << ',' << r.q_rp << ',' << r.q_rh << ',' << r.q_nrh << ',' << r.q_total << ',' << r.q_direct
             << ',' << report.power << ',' << r.err_estimate << '\n';
        os << line.str();
    }
}

} // namespace qcool::currents
