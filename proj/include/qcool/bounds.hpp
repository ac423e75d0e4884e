// bounds.hpp — Unattainability bounds: finite-bath, radiation, Landauer, Scharlau, Allahverdyan

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qcool/qstat.hpp"

namespace qcool::bounds {

enum class DoSKind { power_law_entropy, radiation, tabulated };

// Radiation prefactor (4/3) 15^{-1/4} sqrt(pi) in units c = hbar = 1.
double radiation_prefactor();

// Bath density of states through its Boltzmann entropy ln Omega(E).
class DoSModel {
public:
    static DoSModel power_law(double a, double nu, double volume);
    static DoSModel radiation(double volume);
    // Samples (E_i, ln Omega(E_i)) with strictly increasing E_i (at least 3 points).
    static DoSModel tabulated(std::vector<double> energies, std::vector<double> ln_omega);

    DoSKind kind() const { return kind_; }
    double a() const { return a_; }
    double nu() const { return nu_; }
    double volume() const { return volume_; }

    double ln_omega(double E) const;
    double d_ln_omega(double E) const;
    double d2_ln_omega(double E) const;
    // Open interval on which the model is defined.
    std::pair<double, double> domain() const;

private:
    DoSModel() = default;
    void check_energy(double E) const;
    std::size_t segment(double E) const;

    DoSKind kind_{DoSKind::power_law_entropy};
    double a_{1.0};
    double nu_{0.5};
    double volume_{1.0};
    std::vector<double> e_, f_, slope_, curv_;
};

struct CoolingTask {
    int d_S{2};
    int g{1};
    double delta{1.0};
    double T{1.0};
    double W_wc{1.0};

    void validate() const;
    // ln(2 d_S / 3 g).
    double log_ratio() const;
};

// T' >= Delta / ln(d_S / (g eps)).
double temperature_from_error(const CoolingTask& task, double epsilon);

// C_B(E) = -(d ln Omega)^2 / d^2 ln Omega.
double heat_capacity(const DoSModel& dos, double E);

struct MasanesResult {
    double epsilon_min{1.0};             // exp(-E0/T), leading order
    double log_epsilon_min{0.0};         // -E0/T (finite where epsilon_min underflows)
    double epsilon_with_prefactor{1.0};  // Omega(E0) exp(-E0/T) / Z
    double E0{0.0};
    double log_partition{0.0};
    double ln_omega_E0{0.0};
    bool regime_valid{false};            // W_wc >= 10 T and W_wc >= 10 Delta
    int iterations{0};
};

// ln Z = ln int Omega(E) exp(-E/T) dE by quadrature around the Laplace point.
double log_partition_laplace(const DoSModel& dos, double T);

MasanesResult masanes_error_bound(const CoolingTask& task, const DoSModel& dos);

double bath_family_error_bound(const CoolingTask& task, double a, double nu, double V);
// Natural log of the same bound.
double bath_family_log_error_bound(const CoolingTask& task, double a, double nu, double V);

struct BoundValue {
    double value{0.0};
    bool regime_valid{false};
};

// (15 / pi^2) ln^4(2 d_S / 3 g) T Delta / (V W_wc^4).
BoundValue radiation_temperature_bound(const CoolingTask& task, double V);

// Radiation bound with W_wc = w_rate t and V = (c_speed t)^3.
BoundValue time_scaling_bound(const CoolingTask& task, double t, double w_rate, double c_speed);

double landauer_purity_bound(double lambda_min_in, double beta, double J_B);

struct LandauerOracleReport {
    int trials{0};
    int violations{0};
    double worst_slack{0.0}; // min over trials of lambda_min(out) - bound
};

LandauerOracleReport landauer_brute_force_oracle(int dim_S, int dim_B, double beta, int trials,
                                                 std::uint64_t seed);

double scharlau_bound(double T, double delta, double J_B, int d_B);
double allahverdyan_bound(double T, double delta, double J_B);

// Resource vacancy must be at least the target's (may be +inf).
bool cooling_necessary_condition(double resource_vacancy, double target_vacancy);

// True iff W > ln Z_beta(H_S).
bool work_qubit_cooling_possible(double W, const qstat::HamiltonianSpec& H_S, double beta);

} // namespace qcool::bounds
