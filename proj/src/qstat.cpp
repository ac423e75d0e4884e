// qstat.cpp — Thermal states, entropies, divergences, worst-case work, partial trace

#include "qcool/qstat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qcool/errors.hpp"

namespace qcool::qstat {

namespace {

void require_square(const CMatrix& m, const char* what) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        std::ostringstream os;
        os << what << " must be a non-empty square matrix (got " << m.rows() << "x" << m.cols() << ")";
        throw InvalidInput(os.str());
    }
}

void require_positive_beta(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw InvalidInput("inverse temperature beta must be positive and finite");
    }
}

void require_same_dim(std::size_t a, std::size_t b) {
    if (a != b) {
        std::ostringstream os;
        os << "dimension mismatch: " << a << " vs " << b;
        throw InvalidInput(os.str());
    }
}

CMatrix hermitize(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

// Entropy-style sum of -p ln p over nonnegative eigenvalues.
double shannon(const RVector& p) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p(i) > 0.0) s -= p(i) * std::log(p(i));
    }
    return s;
}

void validate_distribution(std::span<const double> p, const char* what) {
    double sum = 0.0;
    for (double x : p) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw InvalidInput(std::string(what) + ": probabilities must be finite and nonnegative");
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        std::ostringstream os;
        os << what << ": probabilities sum to " << sum << ", expected 1";
        throw InvalidInput(os.str());
    }
}

double log_sum_exp(const std::vector<double>& xs) {
    if (xs.empty()) return -kInf;
    const double m = *std::max_element(xs.begin(), xs.end());
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

} // namespace

// ---------------------------------------------------------------------------
// HamiltonianSpec

HamiltonianSpec::HamiltonianSpec(CMatrix matrix) : matrix_(std::move(matrix)) {
    require_square(matrix_, "Hamiltonian");
    const double defect = hermiticity_defect(matrix_);
    if (defect > kHermitianTol) {
        std::ostringstream os;
        os << "Hamiltonian is not Hermitian (max |H - H^dagger| = " << defect << ")";
        throw InvalidInput(os.str());
    }
    matrix_ = hermitize(matrix_);
}

HamiltonianSpec HamiltonianSpec::diagonal(std::span<const double> energies) {
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(energies.size()),
                              static_cast<Eigen::Index>(energies.size()));
    for (std::size_t i = 0; i < energies.size(); ++i) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = energies[i];
    }
    return HamiltonianSpec(std::move(m));
}

RVector HamiltonianSpec::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double HamiltonianSpec::gap(double degeneracy_tol) const {
    const RVector e = eigenvalues();
    for (Eigen::Index i = 1; i < e.size(); ++i) {
        if (e(i) - e(0) > degeneracy_tol) return e(i) - e(0);
    }
    return 0.0;
}

std::size_t HamiltonianSpec::ground_degeneracy(double degeneracy_tol) const {
    const RVector e = eigenvalues();
    std::size_t g = 0;
    for (Eigen::Index i = 0; i < e.size(); ++i) {
        if (e(i) - e(0) <= degeneracy_tol) ++g;
    }
    return g;
}

double HamiltonianSpec::energy_range() const {
    const RVector e = eigenvalues();
    return e(e.size() - 1) - e(0);
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(CMatrix matrix) : matrix_(std::move(matrix)) {
    require_square(matrix_, "density matrix");
    const double defect = hermiticity_defect(matrix_);
    if (defect > kHermitianTol) {
        std::ostringstream os;
        os << "density matrix is not Hermitian (defect " << defect << ")";
        throw InvalidInput(os.str());
    }
    matrix_ = hermitize(matrix_);
    const double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) {
        std::ostringstream os;
        os << "density matrix trace is " << tr << ", expected 1";
        throw InvalidInput(os.str());
    }
    if (min_eigenvalue() < -kRankTol) {
        throw InvalidInput("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probs) {
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(probs.size()),
                              static_cast<Eigen::Index>(probs.size()));
    for (std::size_t i = 0; i < probs.size(); ++i) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = probs[i];
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
    const double n = psi.norm();
    if (!(n > 0.0)) throw InvalidInput("pure state vector must be nonzero");
    const CVector v = psi / n;
    return DensityMatrix(v * v.adjoint());
}

RVector DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double DensityMatrix::min_eigenvalue() const { return eigenvalues()(0); }

// ---------------------------------------------------------------------------
// SpectrumPair

void SpectrumPair::validate() const {
    if (probs.empty()) throw InvalidInput("spectrum pair is empty");
    if (probs.size() != energies.size()) {
        throw InvalidInput("spectrum pair: probs and energies differ in length");
    }
    validate_distribution(probs, "spectrum pair");
    for (double e : energies) {
        if (!std::isfinite(e)) throw InvalidInput("spectrum pair: energies must be finite");
    }
}

std::vector<double> SpectrumPair::gibbs(double beta) const {
    require_positive_beta(beta);
    const double e0 = *std::min_element(energies.begin(), energies.end());
    std::vector<double> w(energies.size());
    double z = 0.0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        w[i] = std::exp(-beta * (energies[i] - e0));
        z += w[i];
    }
    for (double& x : w) x /= z;
    return w;
}

// ---------------------------------------------------------------------------
// Thermal quantities

DensityMatrix thermal_state(const HamiltonianSpec& H, double beta) {
    require_positive_beta(beta);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H.matrix());
    const RVector& e = es.eigenvalues();
    RVector w(e.size());
    // Shift by the ground energy so the largest weight is exactly 1.
    for (Eigen::Index i = 0; i < e.size(); ++i) w(i) = std::exp(-beta * (e(i) - e(0)));
    w /= w.sum();
    const CMatrix& v = es.eigenvectors();
    CMatrix rho = v * w.cast<cplx>().asDiagonal() * v.adjoint();
    return DensityMatrix(hermitize(rho));
}

double log_partition_function(const HamiltonianSpec& H, double beta) {
    require_positive_beta(beta);
    const RVector e = H.eigenvalues();
    double s = 0.0;
    for (Eigen::Index i = 0; i < e.size(); ++i) s += std::exp(-beta * (e(i) - e(0)));
    return -beta * e(0) + std::log(s);
}

double von_neumann_entropy(const DensityMatrix& rho) { return shannon(rho.eigenvalues()); }

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho.dim(), sigma.dim());
    Eigen::SelfAdjointEigenSolver<CMatrix> es_rho(rho.matrix(), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<CMatrix> es_sigma(sigma.matrix());

    const double neg_entropy = -shannon(es_rho.eigenvalues());
    const RVector& q = es_sigma.eigenvalues();
    const CMatrix& s = es_sigma.eigenvectors();

    double cross = 0.0; // tr(rho log sigma)
    for (Eigen::Index j = 0; j < q.size(); ++j) {
        const double weight = (s.col(j).adjoint() * rho.matrix() * s.col(j))(0, 0).real();
        if (q(j) < kRankTol) {
            if (weight > kRankTol) return kInf;
            continue;
        }
        if (weight > 0.0) cross += weight * std::log(q(j));
    }
    return std::max(0.0, neg_entropy - cross);
}

double vacancy(const DensityMatrix& rho, const HamiltonianSpec& H, double beta) {
    require_same_dim(rho.dim(), H.dim());
    return relative_entropy(thermal_state(H, beta), rho);
}

double renyi_divergence(std::span<const double> p, std::span<const double> q, double alpha) {
    if (std::isnan(alpha) || alpha < 0.0) {
        throw InvalidInput("Renyi order alpha must be >= 0");
    }
    require_same_dim(p.size(), q.size());
    if (p.empty()) throw InvalidInput("Renyi divergence of empty distributions");
    validate_distribution(p, "renyi p");
    validate_distribution(q, "renyi q");

    if (alpha == 0.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] > 0.0) s += q[i];
        return s > 0.0 ? std::max(0.0, -std::log(s)) : kInf;
    }
    if (alpha == 1.0) {
        double kl = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] <= 0.0) continue;
            if (q[i] <= 0.0) return kInf;
            kl += p[i] * std::log(p[i] / q[i]);
        }
        return std::max(0.0, kl);
    }
    if (std::isinf(alpha)) {
        double m = -kInf;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] <= 0.0) continue;
            if (q[i] <= 0.0) return kInf;
            m = std::max(m, std::log(p[i] / q[i]));
        }
        return std::max(0.0, m);
    }

    std::vector<double> terms;
    terms.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0) {
            if (alpha > 1.0) return kInf;
            continue;
        }
        terms.push_back(alpha * std::log(p[i]) + (1.0 - alpha) * std::log(q[i]));
    }
    const double lse = log_sum_exp(terms);
    if (!std::isfinite(lse)) return kInf; // alpha < 1 with disjoint supports
    return std::max(0.0, lse / (alpha - 1.0));
}

TransitionReport transition_allowed(const SpectrumPair& resource,
                                    const SpectrumPair& target,
                                    double beta,
                                    std::span<const double> alpha_grid) {
    if (alpha_grid.empty()) throw InvalidInput("transition_allowed: empty alpha grid");
    resource.validate();
    target.validate();
    require_positive_beta(beta);

    std::vector<double> alphas(alpha_grid.begin(), alpha_grid.end());
    for (double a : {0.0, 0.5, 1.0, 2.0, kAlphaMax}) alphas.push_back(a);
    for (double& a : alphas) {
        if (std::isnan(a) || a < 0.0) throw InvalidInput("transition_allowed: alpha must be >= 0");
        if (std::isinf(a)) a = kAlphaMax;
    }
    std::sort(alphas.begin(), alphas.end());
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

    const auto q_res = resource.gibbs(beta);
    const auto q_tgt = target.gibbs(beta);

    TransitionReport rep;
    rep.alphas = alphas;
    rep.allowed = true;
    rep.worst_margin = kInf;
    for (double a : alphas) {
        const double lhs = renyi_divergence(resource.probs, q_res, a);
        const double rhs = renyi_divergence(target.probs, q_tgt, a);
        double margin = 0.0;
        if (std::isinf(lhs) && std::isinf(rhs)) margin = 0.0;
        else margin = lhs - rhs;
        rep.margins.push_back(margin);
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_alpha = a;
        }
        const double tol = 1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
        if (margin < -tol) rep.allowed = false;
    }
    return rep;
}

double free_energy(const DensityMatrix& rho, const HamiltonianSpec& H, double beta) {
    require_same_dim(rho.dim(), H.dim());
    require_positive_beta(beta);
    const double energy = (rho.matrix() * H.matrix()).trace().real();
    return energy - von_neumann_entropy(rho) / beta;
}

double worst_case_work(const CMatrix& U, const HamiltonianSpec& H, double overlap_tol) {
    require_square(U, "unitary");
    require_same_dim(static_cast<std::size_t>(U.rows()), H.dim());
    const auto n = U.rows();
    const double unitarity = (U.adjoint() * U - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (unitarity > kUnitaryTol) {
        std::ostringstream os;
        os << "worst_case_work: U is not unitary (defect " << unitarity << ")";
        throw InvalidInput(os.str());
    }

    Eigen::SelfAdjointEigenSolver<CMatrix> es(H.matrix());
    const RVector& e = es.eigenvalues();
    const CMatrix& phi = es.eigenvectors();
    const CMatrix u = phi.adjoint() * U * phi; // u(b, a) = <phi_b|U|phi_a>

    // Group degenerate levels into contiguous blocks.
    const double scale = std::max(1.0, e.cwiseAbs().maxCoeff());
    std::vector<Eigen::Index> starts{0};
    for (Eigen::Index i = 1; i < n; ++i) {
        if (e(i) - e(i - 1) > 1e-10 * scale) starts.push_back(i);
    }
    starts.push_back(n);

    double best = -kInf;
    for (std::size_t a = 0; a + 1 < starts.size(); ++a) {
        for (std::size_t b = 0; b + 1 < starts.size(); ++b) {
            const auto ra = starts[a], na = starts[a + 1] - starts[a];
            const auto rb = starts[b], nb = starts[b + 1] - starts[b];
            const double norm = u.block(rb, ra, nb, na).norm();
            if (norm > overlap_tol) best = std::max(best, e(rb) - e(ra));
        }
    }
    return best;
}

CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep) {
    require_square(rho, "partial_trace input");
    if (dims.empty()) throw InvalidInput("partial_trace: no subsystem dimensions");
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw InvalidInput("partial_trace: zero subsystem dimension");
        total *= d;
    }
    if (total != static_cast<std::size_t>(rho.rows())) {
        std::ostringstream os;
        os << "partial_trace: product of dims (" << total << ") != matrix dimension (" << rho.rows() << ")";
        throw InvalidInput(os.str());
    }
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) {
        if (k >= dims.size()) throw InvalidInput("partial_trace: keep index out of range");
        kept[k] = true;
    }

    // Map each global basis index onto (kept index, traced index).
    std::vector<std::size_t> kidx(total), tidx(total);
    std::size_t kdim = 1;
    for (std::size_t s = 0; s < dims.size(); ++s)
        if (kept[s]) kdim *= dims[s];
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rem = i, ki = 0, ti = 0, kstride = 1, tstride = 1;
        for (std::size_t s = dims.size(); s-- > 0;) {
            const std::size_t digit = rem % dims[s];
            rem /= dims[s];
            if (kept[s]) {
                ki += digit * kstride;
                kstride *= dims[s];
            } else {
                ti += digit * tstride;
                tstride *= dims[s];
            }
        }
        kidx[i] = ki;
        tidx[i] = ti;
    }

    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(kdim), static_cast<Eigen::Index>(kdim));
    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t j = 0; j < total; ++j)
            if (tidx[i] == tidx[j])
                out(static_cast<Eigen::Index>(kidx[i]), static_cast<Eigen::Index>(kidx[j])) +=
                    rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    return DensityMatrix(partial_trace(rho.matrix(), dims, keep));
}

} // namespace qcool::qstat
