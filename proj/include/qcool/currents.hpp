// currents.hpp — Transfer functions, RP/RH/NRH heat currents, covariances, power

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qcool/floquet.hpp"
#include "qcool/quadrature.hpp"

namespace qcool::currents {

using network::ReservoirSpec;
using Reservoirs = std::vector<ReservoirSpec>;

// Bose-Einstein occupation (e^{omega/T} - 1)^{-1}; 0 at T = 0.
double planck_occupation(double omega, double T);
// coth(omega / 2T) = 2 N + 1; 1 at T = 0.
double coth_half(double omega, double T);

// p^{(k)}_{ab}(omega) = (pi/2) Tr[I_a(|omega + k omega_d|) A_k(omega) I_b(omega) A_k(omega)^dagger].
double transfer_function(const floquet::FloquetEngine& engine, const Reservoirs& res, int a, int b, int k,
                         double omega);
double transfer_function(const floquet::Coefficients& c, double omega_d, const ReservoirSpec& a,
                         const ReservoirSpec& b, int k, double omega);

struct Options {
    quad::Options quad{};
    double tail_tol{1e-6};      // |last k-shell| / |partial sum|
    double closure_tol{1e-3};   // first-law closure, relative to max |Q|
    bool power_from_sigma_xx{true};
    bool direct{true};
};

struct ReservoirCurrents {
    std::string label;
    double q_rp{0.0};
    double q_rh{0.0};
    double q_nrh{0.0};
    double q_total{0.0};
    double q_direct{0.0};
    double err_estimate{0.0};
    double tail_ratio{0.0};
};

struct HeatCurrentReport {
    std::vector<ReservoirCurrents> reservoirs;
    double power{0.0};            // -sum_alpha q_total
    double power_sigma_xx{0.0};   // independent estimate from the x-x covariance
    bool has_power_sigma_xx{false};
    double power_err{0.0};
    int K{0};
    floquet::Method method{floquet::Method::harmonic_balance};
    bool nrh_included{true};      // false when the drive is not time-reversal invariant
    int evaluations{0};
};

HeatCurrentReport heat_report(const floquet::FloquetEngine& engine, const Reservoirs& res,
                              const Options& opts = {});

double heat_rp(const floquet::FloquetEngine& engine, const Reservoirs& res, int alpha, const Options& opts = {});
double heat_rh(const floquet::FloquetEngine& engine, const Reservoirs& res, int alpha, const Options& opts = {});
// Contract error unless the drive is time-reversal invariant.
double heat_nrh(const floquet::FloquetEngine& engine, const Reservoirs& res, int alpha, const Options& opts = {});
double heat_direct(const floquet::FloquetEngine& engine, const Reservoirs& res, int alpha, const Options& opts = {});

// S^{xx}_{jk}, S^{xp}_{jk}, S^{pp}_{jk} for |j|, |k| <= K.
struct CovarianceCoefficients {
    int K{0};
    Eigen::Index n{0};
    double omega_d{0.0};
    std::vector<CMatrix> xx, xp, pp;
    bool has_pp{false};

    std::size_t index(int j, int k) const {
        return static_cast<std::size_t>((j + K) * (2 * K + 1) + (k + K));
    }
};

CovarianceCoefficients covariance_coefficients(const floquet::FloquetEngine& engine, const Reservoirs& res,
                                               bool with_pp = false, const Options& opts = {});

struct Covariance {
    RMatrix xx, xp, pp;
};

// Equal-time covariances at time t (sigma^{pp} only if the coefficients carry it).
Covariance covariance_at(const CovarianceCoefficients& s, const network::NetworkSpec& net, double t);

// Direct heat and power from an explicit coefficient table (oracle path for the scalar integrands).
double heat_direct_from(const CovarianceCoefficients& s, const network::NetworkSpec& net, const ReservoirSpec& r);
double power_from(const CovarianceCoefficients& s, const network::NetworkSpec& net);

// W = -sum Q; when the sigma^{xx} estimate exists it must agree within closure_tol.
double average_power(const HeatCurrentReport& report, double closure_tol = 1e-3);

// Q^RP > |Q^RH + Q^NRH|.
bool cooling_condition(const HeatCurrentReport& report, int alpha);

void write_csv(std::ostream& os, const HeatCurrentReport& report);

} // namespace qcool::currents
