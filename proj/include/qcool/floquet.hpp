// floquet.hpp — Floquet coefficients A_k(omega) of the driven network's Green's function

#pragma once

#include <string>
#include <vector>

#include "qcool/network.hpp"

namespace qcool::floquet {

inline constexpr double kConditionThreshold = 1e12;
inline constexpr double kWeakDriveRatio = 0.1;
inline constexpr int kMaxK = 25;

enum class Method { perturbative, harmonic_balance };

const char* to_string(Method m);

// Coefficients at one frequency: coeffs[k + K] = A_k(omega), |k| <= K.
struct Coefficients {
    int K{0};
    std::vector<CMatrix> coeffs;
    double condition{1.0};

    const CMatrix& A(int k) const { return coeffs[static_cast<std::size_t>(k + K)]; }
    bool has(int k) const { return std::abs(k) <= K; }
};

// ghat(i omega) = D(omega)^{-1}; instability error when D is singular on the real axis.
CMatrix undriven_propagator(const network::NetworkSpec& net, const network::DampingBackend& damping,
                            double omega);

struct PerturbativeResult {
    Coefficients coeffs;
    bool weak_drive{true};   // max_k ||V_k|| / ||V_0|| <= kWeakDriveRatio
    double drive_ratio{0.0};
};

PerturbativeResult floquet_perturbative(const network::NetworkSpec& net,
                                        const network::DampingBackend& damping, double omega);

// Truncated harmonic-balance system
//   D(omega + k omega_d) A_k + sum_{m != 0} V_m A_{k-m} = delta_{k0} 1,  |k| <= K.
// Throws InstabilityError when the (block-row equilibrated) condition number exceeds 1e12.
Coefficients floquet_harmonic_balance(const network::NetworkSpec& net,
                                      const network::DampingBackend& damping, double omega, int K);

// Reusable evaluator: caches the stiffness and the truncation order.
class FloquetEngine {
public:
    FloquetEngine(network::NetworkSpec net, network::DampingBackend damping,
                  Method method = Method::harmonic_balance, int K = -1);

    const network::NetworkSpec& net() const { return net_; }
    const network::DampingBackend& damping() const { return damping_; }
    const network::Stiffness& stiffness() const { return stiff_; }
    Method method() const { return method_; }
    int K() const { return K_; }
    bool K_converged() const { return K_converged_; }

    CMatrix ghat(double omega) const;
    Coefficients at(double omega) const;
    // Same as `at` but records ill-conditioning instead of throwing.
    Coefficients at_unchecked(double omega) const;

    // Undamped resonances +-Omega_r shifted by k omega_d, |k| <= K, sorted.
    std::vector<double> resonances() const;

private:
    Coefficients solve(double omega, int K, bool check) const;
    void choose_K();

    network::NetworkSpec net_;
    network::DampingBackend damping_;
    network::Stiffness stiff_;
    Method method_;
    int K_{0};
    bool K_converged_{true};
};

// Log-dense clusters around every resonance plus a linear background on [lo, hi].
std::vector<double> frequency_grid(const FloquetEngine& engine, double lo, double hi,
                                   int background_points = 2001, int cluster_points = 40);

struct FloquetSolution {
    int K{0};
    std::vector<double> grid;
    std::vector<Coefficients> coeffs;
    Method method{Method::harmonic_balance};
    bool stable{true};
    std::vector<double> condition_numbers;
    double omega_d{0.0};
    network::Stiffness stiffness;

    const CMatrix& A(int k, std::size_t i) const { return coeffs[i].A(k); }
};

// Deterministic parallel solve over the grid (results independent of thread count).
FloquetSolution solve_on_grid(const FloquetEngine& engine, std::vector<double> grid, int threads = 1);

struct StabilityReport {
    bool stable{true};
    bool real_axis_pole{false};
    bool condition_exceeded{false};
    bool monodromy_unstable{false};
    double worst_omega{0.0};
    double worst_condition{1.0};
    double monodromy_radius{0.0};   // largest |Floquet multiplier| (undriven: exp(max Re lambda))
    std::string detail;
};

StabilityReport stability_check(const network::NetworkSpec& net, const network::DampingBackend& damping,
                                const std::vector<double>& omega_grid, int K);

struct TimeDomainResult {
    RMatrix G;
    double imag_residual{0.0};
    bool coverage_ok{true};   // grid extends far enough for the requested accuracy
};

// G(t, t') = (1/2 pi) sum_k int A_k(omega) e^{i omega (t - t')} e^{i k omega_d t} d omega, with
// piecewise-linear (Filon) integration over the grid and the 1/omega^2 tail of A_0 handled analytically.
TimeDomainResult greens_time_domain(const FloquetSolution& sol, double t, double t_prime);

} // namespace qcool::floquet
