// cooling.hpp — Single-oscillator cooling limits: balance condition, drive-frequency scans, asymptotics

#pragma once

#include <ostream>
#include <utility>
#include <vector>

#include "qcool/floquet.hpp"

namespace qcool::cooling {

inline constexpr double kDopplerRatio = 10.0;    // gamma / omega_m >= 10
inline constexpr double kSidebandRatio = 0.1;    // gamma / omega_m <= 0.1

// Cold mode omega_m coupled to a parametrically driven oscillator
// V(t) = omega_0^2 + v (e^{i omega_d t} + e^{-i omega_d t}) that dumps into a T = 0 reservoir I_B.
struct CoolingSetup {
    double omega_m{1.0};
    double omega_0{100.0};
    double gamma{0.01};
    network::SpectralDensity I_B = network::SpectralDensity::flat(1.0, RMatrix::Identity(1, 1));
    double v{1e-3};
    int k_max{5};

    void validate() const;
    network::NetworkSpec network(double omega_d) const;
    network::DampingBackend damping() const;
    // Scalar dump density (zero for omega <= 0).
    double dump_density(double omega) const;
};

enum class Regime { doppler, sideband, intermediate };
const char* to_string(Regime r);
Regime classify(double gamma, double omega_m);

enum class Approximation { weak, balance };
const char* to_string(Approximation a);

struct BalanceReport {
    double ratio{0.0};        // heating sum / pumping sum
    double n_bar{0.0};        // R / (1 - R), infinity if R >= 1
    double tail_ratio{0.0};   // largest |k = k_max term| / its sum
    int k_d{1};
    int K{0};
};

BalanceReport balance_report(const CoolingSetup& setup, double omega_d);

// |Q^RP_A / Q^NRH_A| at occupation n_bar.
double rp_nrh_ratio(const CoolingSetup& setup, double omega_d, double n_bar);
double min_occupation_balance(const CoolingSetup& setup, double omega_d);
// First-order A_{+-1}; regime error for omega_d <= omega_m.
double min_occupation_weak(const CoolingSetup& setup, double omega_d);

struct ScanPoint {
    double omega_d{0.0};
    double n_bar{0.0};
    double T_equiv{0.0};
};

struct CoolingResult {
    double n_bar_min{0.0};
    double omega_d_opt{0.0};
    double T_min{0.0};
    Regime regime{Regime::intermediate};
    Approximation approximation{Approximation::weak};
    std::vector<ScanPoint> scan;
};

// Coarse scan (steps points plus clusters at omega_0 and omega_0 +- omega_m), then Brent refinement.
CoolingResult optimize_drive_frequency(const CoolingSetup& setup, std::pair<double, double> omega_d_range,
                                       int steps = 400, Approximation approx = Approximation::weak);

struct LimitValue {
    double value{0.0};
    bool regime_valid{false};
};

// (gamma / 2 omega_m) omega_0 / (omega_0 - gamma).
LimitValue doppler_limit(double gamma, double omega_m, double omega_0);
// gamma^2 / (4 omega_m^2).
LimitValue sideband_limit(double gamma, double omega_m);

// omega_m / ln(1 + 1/n_bar).
double occupation_to_temperature(double n_bar, double omega_m);

void write_scan_csv(std::ostream& os, const CoolingResult& result);
void write_summary_csv(std::ostream& os, const CoolingResult& result);

} // namespace qcool::cooling
