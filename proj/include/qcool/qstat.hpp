// qstat.hpp — Finite-dimensional states, thermal states, entropies and divergences

#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "qcool/linalg.hpp"

namespace qcool::qstat {

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kRankTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kDefaultOverlapTol = 1e-10;
inline constexpr double kAlphaMax = 100.0; // finite stand-in for alpha = infinity
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Hermitian operator in energy units.
class HamiltonianSpec {
public:
    explicit HamiltonianSpec(CMatrix matrix);
    static HamiltonianSpec diagonal(std::span<const double> energies);

    const CMatrix& matrix() const { return matrix_; }
    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

    RVector eigenvalues() const;
    // Gap between the lowest level and the next distinct one (0 if fully degenerate).
    double gap(double degeneracy_tol = 1e-10) const;
    std::size_t ground_degeneracy(double degeneracy_tol = 1e-10) const;
    double energy_range() const;

private:
    CMatrix matrix_;
};

// Unit-trace positive semidefinite operator.
class DensityMatrix {
public:
    explicit DensityMatrix(CMatrix matrix);
    static DensityMatrix diagonal(std::span<const double> probs);
    static DensityMatrix pure(const CVector& psi);

    const CMatrix& matrix() const { return matrix_; }
    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    RVector eigenvalues() const;
    double min_eigenvalue() const;

private:
    CMatrix matrix_;
};

// Diagonal (energy-incoherent) state: populations over energy levels.
struct SpectrumPair {
    std::vector<double> probs;
    std::vector<double> energies;

    void validate() const;
    // Gibbs populations for the same energies.
    std::vector<double> gibbs(double beta) const;
};

DensityMatrix thermal_state(const HamiltonianSpec& H, double beta);
double log_partition_function(const HamiltonianSpec& H, double beta);

double von_neumann_entropy(const DensityMatrix& rho);

// S(rho || sigma) in nats; +inf when supp(rho) is not inside supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

// S(omega_beta(H) || rho).
double vacancy(const DensityMatrix& rho, const HamiltonianSpec& H, double beta);

// Classical Renyi divergence (alpha-1)^{-1} ln sum p^alpha q^(1-alpha); alpha = 1 is KL,
// alpha = 0 is -ln sum_{p>0} q, alpha = +inf is ln max p/q.
double renyi_divergence(std::span<const double> p, std::span<const double> q, double alpha);

struct TransitionReport {
    bool allowed{false};
    double worst_alpha{0.0};
    double worst_margin{0.0};
    bool alpha_max_proxy{true}; // alpha = infinity replaced by kAlphaMax
    std::vector<double> alphas;
    std::vector<double> margins; // S_alpha(resource) - S_alpha(target)
};

// Catalytic thermal-operation feasibility for diagonal states. The mandatory
// alphas {0, 1/2, 1, 2, kAlphaMax} are merged into the supplied grid.
TransitionReport transition_allowed(const SpectrumPair& resource,
                                    const SpectrumPair& target,
                                    double beta,
                                    std::span<const double> alpha_grid);

double free_energy(const DensityMatrix& rho, const HamiltonianSpec& H, double beta);

// Largest E2 - E1 over eigenvector pairs with <phi2|U|phi1> != 0. Degenerate
// eigenspaces are handled as blocks (norm of the corresponding block of U).
double worst_case_work(const CMatrix& U, const HamiltonianSpec& H,
                       double overlap_tol = kDefaultOverlapTol);

CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

} // namespace qcool::qstat
