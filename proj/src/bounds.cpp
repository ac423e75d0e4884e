// bounds.cpp — Unattainability bounds: finite-bath, radiation, Landauer, Scharlau, Allahverdyan

#include "qcool/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "qcool/errors.hpp"
#include "qcool/sampling.hpp"

namespace qcool::bounds {

namespace {

constexpr double kRootRelTol = 1e-10;
constexpr std::uintmax_t kRootMaxIter = 200;
constexpr double kLaplaceWidth = 40.0;

void require_positive(double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw InvalidInput(std::string(name) + " must be positive and finite");
    }
}

struct RelTol {
    bool operator()(double a, double b) const {
        return std::abs(b - a) <= kRootRelTol * std::min(std::abs(a), std::abs(b));
    }
};

// Root of a decreasing function f on (lo, hi) found by expanding a bracket from `start`.
std::pair<double, int> decreasing_root(const std::function<double(double)>& f, double start,
                                       double lo_limit, double hi_limit, const char* what) {
    double lo = start, hi = start;
    double flo = f(lo), fhi = flo;
    int expand = 0;
    while (flo <= 0.0) {
        lo = std::max(0.5 * lo, lo_limit);
        if (lo == lo_limit && expand > 0) break;
        flo = f(lo);
        if (++expand > 2000) break;
    }
    expand = 0;
    while (fhi >= 0.0) {
        hi = std::min(2.0 * hi, hi_limit);
        fhi = f(hi);
        if (hi == hi_limit || ++expand > 2000) break;
    }
    if (!(flo > 0.0) || !(fhi < 0.0)) {
        throw ModelInvalid(std::string(what) + ": no root in bracket (is ln Omega strictly concave?)");
    }
    std::uintmax_t iters = kRootMaxIter;
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, RelTol{}, iters);
    if (iters >= kRootMaxIter) {
        throw AccuracyError(std::string(what) + ": root finder did not converge in 200 iterations");
    }
    return {0.5 * (r.first + r.second), static_cast<int>(iters)};
}

double model_root(const DoSModel& dos, double target, const char* what, int* iterations) {
    auto f = [&](double E) { return dos.d_ln_omega(E) - target; };
    const auto [lo, hi] = dos.domain();
    if (dos.kind() == DoSKind::tabulated) {
        // Stay strictly inside the table.
        const double a = lo + 1e-12 * (hi - lo), b = hi - 1e-12 * (hi - lo);
        const double fa = f(a), fb = f(b);
        if (!(fa > 0.0) || !(fb < 0.0)) {
            throw ModelInvalid(std::string(what) + ": slope target outside the tabulated range");
        }
        std::uintmax_t iters = kRootMaxIter;
        const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, RelTol{}, iters);
        if (iterations) *iterations = static_cast<int>(iters);
        return 0.5 * (r.first + r.second);
    }
    const auto [root, iters] = decreasing_root(f, std::max(dos.volume(), 1e-6), 1e-300, 1e300, what);
    if (iterations) *iterations = iters;
    return root;
}

} // namespace

double radiation_prefactor() {
    return (4.0 / 3.0) * std::pow(15.0, -0.25) * std::sqrt(std::numbers::pi);
}

// ---------------------------------------------------------------------------
// DoSModel

DoSModel DoSModel::power_law(double a, double nu, double volume) {
    require_positive(a, "DoS prefactor a");
    require_positive(nu, "DoS exponent nu");
    require_positive(volume, "bath volume");
    DoSModel m;
    m.kind_ = DoSKind::power_law_entropy;
    m.a_ = a;
    m.nu_ = nu;
    m.volume_ = volume;
    return m;
}

DoSModel DoSModel::radiation(double volume) {
    DoSModel m = power_law(radiation_prefactor(), 0.75, volume);
    m.kind_ = DoSKind::radiation;
    return m;
}

DoSModel DoSModel::tabulated(std::vector<double> energies, std::vector<double> ln_omega) {
    if (energies.size() != ln_omega.size() || energies.size() < 3) {
        throw InvalidInput("tabulated DoS needs at least 3 (E, ln Omega) pairs of equal length");
    }
    for (std::size_t i = 0; i < energies.size(); ++i) {
        if (!std::isfinite(energies[i]) || !std::isfinite(ln_omega[i])) {
            throw InvalidInput("tabulated DoS entries must be finite");
        }
        if (i > 0 && !(energies[i] > energies[i - 1])) {
            throw InvalidInput("tabulated DoS energies must be strictly increasing");
        }
    }
    DoSModel m;
    m.kind_ = DoSKind::tabulated;
    m.e_ = std::move(energies);
    m.f_ = std::move(ln_omega);
    const std::size_t n = m.e_.size();
    m.slope_.resize(n);
    m.curv_.resize(n);
    // Three-point nonuniform differences at interior nodes, one-sided at the ends.
    auto d1 = [&](std::size_t i0, std::size_t i1, std::size_t i2, double x) {
        const double x0 = m.e_[i0], x1 = m.e_[i1], x2 = m.e_[i2];
        return m.f_[i0] * (2 * x - x1 - x2) / ((x0 - x1) * (x0 - x2)) +
               m.f_[i1] * (2 * x - x0 - x2) / ((x1 - x0) * (x1 - x2)) +
               m.f_[i2] * (2 * x - x0 - x1) / ((x2 - x0) * (x2 - x1));
    };
    auto d2 = [&](std::size_t i0, std::size_t i1, std::size_t i2) {
        const double x0 = m.e_[i0], x1 = m.e_[i1], x2 = m.e_[i2];
        return 2.0 * (m.f_[i0] / ((x0 - x1) * (x0 - x2)) + m.f_[i1] / ((x1 - x0) * (x1 - x2)) +
                      m.f_[i2] / ((x2 - x0) * (x2 - x1)));
    };
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = std::clamp<std::size_t>(i, 1, n - 2);
        m.slope_[i] = d1(c - 1, c, c + 1, m.e_[i]);
        m.curv_[i] = d2(c - 1, c, c + 1);
    }
    return m;
}

std::pair<double, double> DoSModel::domain() const {
    if (kind_ == DoSKind::tabulated) return {e_.front(), e_.back()};
    return {0.0, qstat::kInf};
}

void DoSModel::check_energy(double E) const {
    const auto [lo, hi] = domain();
    const bool ok = kind_ == DoSKind::tabulated ? (E >= lo && E <= hi) : (E > lo && std::isfinite(E));
    if (!ok) {
        std::ostringstream os;
        os << "energy " << E << " outside the DoS model domain";
        throw DomainError(os.str());
    }
}

std::size_t DoSModel::segment(double E) const {
    auto it = std::upper_bound(e_.begin(), e_.end(), E);
    std::size_t i = static_cast<std::size_t>(std::distance(e_.begin(), it));
    return std::clamp<std::size_t>(i, 1, e_.size() - 1) - 1;
}

double DoSModel::ln_omega(double E) const {
    check_energy(E);
    if (kind_ != DoSKind::tabulated) return a_ * std::pow(volume_, 1.0 - nu_) * std::pow(E, nu_);
    // Cubic Hermite on the segment.
    const std::size_t i = segment(E);
    const double h = e_[i + 1] - e_[i], s = (E - e_[i]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    return h00 * f_[i] + h10 * h * slope_[i] + h01 * f_[i + 1] + h11 * h * slope_[i + 1];
}

double DoSModel::d_ln_omega(double E) const {
    check_energy(E);
    if (kind_ != DoSKind::tabulated) return a_ * nu_ * std::pow(volume_, 1.0 - nu_) * std::pow(E, nu_ - 1.0);
    const std::size_t i = segment(E);
    const double h = e_[i + 1] - e_[i], s = (E - e_[i]) / h;
    const double d00 = 6 * s * s - 6 * s, d10 = 3 * s * s - 4 * s + 1;
    const double d01 = -6 * s * s + 6 * s, d11 = 3 * s * s - 2 * s;
    return (d00 * f_[i] + d01 * f_[i + 1]) / h + d10 * slope_[i] + d11 * slope_[i + 1];
}

double DoSModel::d2_ln_omega(double E) const {
    check_energy(E);
    if (kind_ != DoSKind::tabulated) {
        return a_ * nu_ * (nu_ - 1.0) * std::pow(volume_, 1.0 - nu_) * std::pow(E, nu_ - 2.0);
    }
    const std::size_t i = segment(E);
    const double s = (E - e_[i]) / (e_[i + 1] - e_[i]);
    return (1 - s) * curv_[i] + s * curv_[i + 1];
}

// ---------------------------------------------------------------------------
// CoolingTask

void CoolingTask::validate() const {
    if (d_S < 1 || g < 1) throw InvalidInput("cooling task: d_S and g must be positive integers");
    if (g > d_S) throw InvalidInput("cooling task: g must not exceed d_S");
    require_positive(delta, "cooling task gap Delta");
    require_positive(T, "cooling task temperature T");
    require_positive(W_wc, "cooling task worst-case work W_wc");
}

double CoolingTask::log_ratio() const {
    return std::log(2.0 * d_S / (3.0 * g));
}

double temperature_from_error(const CoolingTask& task, double epsilon) {
    task.validate();
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw DomainError("cooling error must lie in (0, 1)");
    const double arg = static_cast<double>(task.d_S) / (task.g * epsilon);
    if (!(arg > 1.0)) throw DomainError("temperature_from_error: d_S/(g eps) <= 1, bound is vacuous");
    return task.delta / std::log(arg);
}

double heat_capacity(const DoSModel& dos, double E) {
    const double d1 = dos.d_ln_omega(E);
    const double d2 = dos.d2_ln_omega(E);
    if (d2 == 0.0 || std::abs(d2) < 1e-300) throw ModelInvalid("heat capacity is singular (zero curvature of ln Omega)");
    return -d1 * d1 / d2;
}

double log_partition_laplace(const DoSModel& dos, double T) {
    require_positive(T, "temperature");
    const double e_star = model_root(dos, 1.0 / T, "Laplace point", nullptr);
    const double curv = dos.d2_ln_omega(e_star);
    if (!(curv < 0.0)) throw ModelInvalid("Laplace point is not a maximum (ln Omega not concave)");
    const double sigma = 1.0 / std::sqrt(-curv);
    const auto [dlo, dhi] = dos.domain();
    const double lo = std::max(dlo, e_star - kLaplaceWidth * sigma);
    const double hi = std::min(dhi, e_star + kLaplaceWidth * sigma);
    const double peak = dos.ln_omega(e_star) - e_star / T;
    auto f = [&](double E) { return std::exp(dos.ln_omega(E) - E / T - peak); };
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    double err = 0.0;
    const double left = GK::integrate(f, lo, e_star, 20, 1e-13, &err);
    const double right = GK::integrate(f, e_star, hi, 20, 1e-13, &err);
    return peak + std::log(left + right);
}

MasanesResult masanes_error_bound(const CoolingTask& task, const DoSModel& dos) {
    task.validate();
    const double L = task.log_ratio();
    if (!(L > 0.0)) throw DomainError("masanes bound: ln(2 d_S / 3 g) <= 0, bound is vacuous");
    if (dos.kind() != DoSKind::tabulated && dos.nu() >= 1.0) {
        throw ModelInvalid("masanes bound: nu >= 1 gives a non-concave entropy, no root for E0");
    }
    MasanesResult res;
    res.E0 = model_root(dos, L / task.W_wc, "E0", &res.iterations);
    if (!(dos.d2_ln_omega(res.E0) < 0.0)) throw ModelInvalid("masanes bound: ln Omega not concave at E0");
    res.ln_omega_E0 = dos.ln_omega(res.E0);
    res.log_epsilon_min = -res.E0 / task.T;
    res.epsilon_min = std::exp(res.log_epsilon_min);
    res.log_partition = log_partition_laplace(dos, task.T);
    res.epsilon_with_prefactor = std::exp(res.ln_omega_E0 - res.E0 / task.T - res.log_partition);
    res.regime_valid = task.W_wc >= 10.0 * task.T && task.W_wc >= 10.0 * task.delta;
    return res;
}

double bath_family_error_bound(const CoolingTask& task, double a, double nu, double V) {
    return std::exp(bath_family_log_error_bound(task, a, nu, V));
}

double bath_family_log_error_bound(const CoolingTask& task, double a, double nu, double V) {
    task.validate();
    require_positive(a, "a");
    require_positive(V, "V");
    if (!(nu > 0.0 && nu < 1.0)) throw DomainError("bath family bound requires 0 < nu < 1");
    const double L = task.log_ratio();
    if (!(L > 0.0)) throw DomainError("bath family bound: ln(2 d_S / 3 g) <= 0, bound is vacuous");
    return -(V / task.T) * std::pow(a * nu * task.W_wc / L, 1.0 / (1.0 - nu));
}

BoundValue radiation_temperature_bound(const CoolingTask& task, double V) {
    task.validate();
    require_positive(V, "V");
    const double L = task.log_ratio();
    if (!(L > 0.0)) throw DomainError("radiation bound: ln(2 d_S / 3 g) <= 0, bound is vacuous");
    const double pi2 = std::numbers::pi * std::numbers::pi;
    BoundValue out;
    out.value = (15.0 / pi2) * std::pow(L, 4) * task.T * task.delta / (V * std::pow(task.W_wc, 4));
    const double neg_log_eps = -bath_family_log_error_bound(task, radiation_prefactor(), 0.75, V);
    out.regime_valid = task.W_wc >= 10.0 * task.T && task.W_wc >= 10.0 * task.delta &&
                       neg_log_eps >= 10.0 * std::log(static_cast<double>(task.d_S) / task.g);
    return out;
}

BoundValue time_scaling_bound(const CoolingTask& task, double t, double w_rate, double c_speed) {
    require_positive(t, "t");
    require_positive(w_rate, "w_rate");
    require_positive(c_speed, "c_speed");
    CoolingTask scaled = task;
    scaled.W_wc = w_rate * t;
    const double ct = c_speed * t;
    return radiation_temperature_bound(scaled, ct * ct * ct);
}

double landauer_purity_bound(double lambda_min_in, double beta, double J_B) {
    if (!(lambda_min_in > 0.0 && lambda_min_in <= 1.0)) throw InvalidInput("lambda_min must lie in (0, 1]");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidInput("beta must be nonnegative and finite");
    if (!(J_B >= 0.0)) throw InvalidInput("J_B must be nonnegative");
    return std::exp(-beta * J_B) * lambda_min_in;
}

LandauerOracleReport landauer_brute_force_oracle(int dim_S, int dim_B, double beta, int trials,
                                                 std::uint64_t seed) {
    if (dim_S < 1 || dim_S > 4 || dim_B < 1 || dim_B > 6) {
        throw InvalidInput("landauer oracle: dim_S must be in [1,4] and dim_B in [1,6]");
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidInput("beta must be nonnegative and finite");
    if (trials < 0) throw InvalidInput("trials must be nonnegative");

    auto rng = sampling::make_rng(seed);
    LandauerOracleReport rep;
    rep.trials = trials;
    rep.worst_slack = qstat::kInf;
    const std::size_t dims[2] = {static_cast<std::size_t>(dim_S), static_cast<std::size_t>(dim_B)};
    const std::size_t keep[1] = {0};
    for (int t = 0; t < trials; ++t) {
        const CMatrix rho_s = sampling::random_density_matrix(dim_S, rng);
        const CMatrix h_b = sampling::random_hermitian(dim_B, rng);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(h_b, Eigen::EigenvaluesOnly);
        const double J_B = es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
        const CMatrix omega_b = beta > 0.0
                                    ? qstat::thermal_state(qstat::HamiltonianSpec(h_b), beta).matrix()
                                    : CMatrix(CMatrix::Identity(dim_B, dim_B) / static_cast<double>(dim_B));
        const CMatrix u = sampling::haar_unitary(static_cast<Eigen::Index>(dim_S) * dim_B, rng);
        const CMatrix out = u * kron(rho_s, omega_b) * u.adjoint();
        const CMatrix reduced = qstat::partial_trace(out, dims, keep);
        Eigen::SelfAdjointEigenSolver<CMatrix> es_in(rho_s, Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<CMatrix> es_out(0.5 * (reduced + reduced.adjoint()), Eigen::EigenvaluesOnly);
        const double lam_in = es_in.eigenvalues()(0);
        const double lam_out = es_out.eigenvalues()(0);
        const double slack = lam_out - std::exp(-beta * J_B) * lam_in;
        rep.worst_slack = std::min(rep.worst_slack, slack);
        if (slack < -1e-9) ++rep.violations;
    }
    return rep;
}

double scharlau_bound(double T, double delta, double J_B, int d_B) {
    require_positive(T, "T");
    require_positive(delta, "Delta");
    if (!(J_B >= 0.0)) throw InvalidInput("J_B must be nonnegative");
    if (d_B < 1) throw InvalidInput("d_B must be a positive integer");
    const double denom = J_B + T * std::log(static_cast<double>(d_B));
    if (!(denom > 0.0)) throw DomainError("scharlau bound: J_B + T ln d_B must be positive");
    return T * delta / denom;
}

double allahverdyan_bound(double T, double delta, double J_B) {
    require_positive(T, "T");
    require_positive(delta, "Delta");
    require_positive(J_B, "J_B");
    return T * delta / J_B;
}

bool cooling_necessary_condition(double resource_vacancy, double target_vacancy) {
    if (std::isnan(resource_vacancy) || std::isnan(target_vacancy)) {
        throw InvalidInput("vacancies must not be NaN");
    }
    return resource_vacancy >= target_vacancy;
}

bool work_qubit_cooling_possible(double W, const qstat::HamiltonianSpec& H_S, double beta) {
    return W > qstat::log_partition_function(H_S, beta);
}

} // namespace qcool::bounds
