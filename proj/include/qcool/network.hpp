// network.hpp — Driven harmonic networks, reservoirs, spectral densities and damping backends

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcool/linalg.hpp"

namespace qcool::network {

inline constexpr double kSymmetryTol = 1e-12;

// V(t) = V0 + sum_{k != 0} V_k e^{i k omega_d t}, with V_{-k} = conj(V_k) so V(t) is real.
struct NetworkSpec {
    int n_nodes{0};
    RVector masses;
    RMatrix V0;
    std::map<int, CMatrix> Vk;  // k > 0 only
    double omega_d{0.0};
    bool time_reversal{true};   // all V_k real, hence V_{-k} = V_k

    RMatrix mass_matrix() const { return masses.asDiagonal(); }
    bool driven() const { return !Vk.empty(); }
    int max_harmonic() const { return Vk.empty() ? 0 : Vk.rbegin()->first; }
    // Fourier component for any integer k (V_0 for k = 0, zero when absent).
    CMatrix V(int k) const;
};

struct NetworkInput {
    std::vector<double> masses;  // empty -> all ones
    RMatrix V0;
    std::map<int, CMatrix> Vk;
    std::optional<double> omega_d;
    std::optional<bool> time_reversal;
};

NetworkSpec build_network(const NetworkInput& in);

enum class DensityKind { delta_mode, ohmic, flat, table };

// I(omega) = profile(omega) * site_weights for the parametric kinds; I(omega) = 0 for omega < 0.
struct SpectralDensity {
    DensityKind kind{DensityKind::ohmic};
    double strength{0.0};   // delta_mode: I~ ; flat: constant level
    double omega_m{0.0};    // delta_mode mode frequency
    double gamma{0.0};      // ohmic damping rate
    double cutoff{0.0};     // ohmic Lorentz-Drude cutoff; 0 or inf means no cutoff
    std::vector<double> table_omega;
    std::vector<RMatrix> table_values;
    RMatrix site_weights;

    static SpectralDensity delta(double strength, double omega_m, RMatrix weights);
    static SpectralDensity ohmic(double gamma, double cutoff, RMatrix weights);
    static SpectralDensity flat(double level, RMatrix weights);
    static SpectralDensity table(std::vector<double> omega, std::vector<RMatrix> values);

    bool is_delta() const { return kind == DensityKind::delta_mode; }
    // Pointwise value; contract error for delta_mode.
    RMatrix operator()(double omega) const;
    // Weight of the delta: I~ * site_weights.
    RMatrix delta_weight() const;
    Eigen::Index dim() const;
    void validate(Eigen::Index n) const;
};

struct ReservoirSpec {
    std::string label;
    double temperature{0.0};
    SpectralDensity density;
    RMatrix projector;

    // Builds P from the coupled sites and validates P I P = I.
    static ReservoirSpec make(std::string label, double temperature, SpectralDensity density,
                              const std::vector<int>& sites, int n_nodes);
    void validate(int n_nodes) const;
};

enum class DampingKind { markovian_ohmic, phenomenological, tabulated_kernel };

struct DampingBackend {
    DampingKind kind{DampingKind::markovian_ohmic};
    RMatrix Gamma;         // markovian_ohmic
    RVector gamma_node;    // phenomenological
    RVector omega0_node;   // phenomenological
};

// Gamma = sum of gamma_alpha W_alpha over the ohmic reservoirs.
DampingBackend make_markovian_backend(const NetworkSpec& net, const std::vector<ReservoirSpec>& res);
DampingBackend make_phenomenological_backend(const NetworkSpec& net, const RVector& gamma,
                                             const RVector& omega0);

void validate_backend(const NetworkSpec& net, const DampingBackend& damping);

RMatrix renormalized_potential(const NetworkSpec& net, const DampingBackend& damping);

// D(omega) = -omega^2 M2 + i omega C + K0, the inverse of the undriven propagator.
struct Stiffness {
    RMatrix M2, C, K0;
    CMatrix operator()(double omega) const;
};

Stiffness dynamic_stiffness(const NetworkSpec& net, const DampingBackend& damping);

// Undamped normal-mode frequencies from M^{-1} V_R (phenomenological: omega0).
std::vector<double> normal_mode_frequencies(const NetworkSpec& net, const DampingBackend& damping);

} // namespace qcool::network
