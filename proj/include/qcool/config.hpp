// config.hpp — Strict JSON run configuration: parsing, validation and serialization

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcool/bounds.hpp"
#include "qcool/cooling.hpp"
#include "qcool/floquet.hpp"

namespace qcool::config {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kUnitNote = "natural units hbar = k_B = 1";

enum class Mode { bounds, simulate, coolscan, validate };
const char* to_string(Mode m);
Mode parse_mode(const std::string& s);

struct DensityConfig {
    std::string kind{"ohmic"};   // delta_mode | ohmic | flat | table
    double strength{0.0};
    double omega_m{0.0};
    double gamma{0.0};
    double cutoff{0.0};
    std::optional<RMatrix> weights;   // defaults to the site projector
    std::vector<double> table_omega;
    std::vector<RMatrix> table_values;

    network::SpectralDensity build(const RMatrix& projector) const;
};

struct ReservoirConfig {
    std::string label;
    double temperature{0.0};
    std::vector<int> sites;
    DensityConfig density;
};

struct DampingConfig {
    std::string kind{"markovian_ohmic"};   // markovian_ohmic | phenomenological | tabulated_kernel
    std::vector<double> gamma;
    std::vector<double> omega0;
};

struct DoSConfig {
    std::string kind{"power_law"};   // power_law | radiation | tabulated
    double a{1.0};
    double nu{0.5};
    double volume{1.0};
    std::vector<double> energies;
    std::vector<double> ln_omega;

    bounds::DoSModel build() const;
};

// One requested bound. `params` holds the scalar arguments named as in the bounds API.
struct BoundsTaskConfig {
    std::string label;
    std::string bound;   // masanes | bath_family | radiation | time_scaling | temperature_from_error
                         // | landauer | scharlau | allahverdyan
    std::optional<bounds::CoolingTask> task;
    std::optional<DoSConfig> dos;
    std::map<std::string, double> params;
};

struct CoolingConfig {
    double omega_m{1.0};
    double omega_0{100.0};
    double gamma{0.01};
    double v{1e-3};
    int k_max{5};
    DensityConfig dump;   // 1x1 weights
    std::pair<double, double> omega_d_range{0.0, 0.0};   // zero -> (1.01 omega_m, 2 omega_0)
    cooling::Approximation approximation{cooling::Approximation::weak};

    cooling::CoolingSetup setup() const;
    std::pair<double, double> range() const;
};

struct Numerics {
    double quad_rel_tol{1e-8};
    int floquet_K{-1};   // -1: automatic
    int scan_steps{400};
    int threads{0};      // 0: hardware concurrency
    floquet::Method method{floquet::Method::harmonic_balance};
};

struct Output {
    std::string path;    // empty -> stdout
    std::string format{"csv"};
};

struct RunConfig {
    std::string version{kSchemaVersion};
    Mode mode{Mode::validate};
    std::optional<network::NetworkInput> network;
    std::vector<ReservoirConfig> reservoirs;
    std::optional<DampingConfig> damping;
    std::vector<BoundsTaskConfig> bounds_tasks;
    std::optional<CoolingConfig> cooling;
    Numerics numerics;
    Output output;

    network::NetworkSpec build_network() const;
    std::vector<network::ReservoirSpec> build_reservoirs(int n_nodes) const;
    network::DampingBackend build_damping(const network::NetworkSpec& net,
                                          const std::vector<network::ReservoirSpec>& res) const;
    int resolved_threads() const;
};

// Strict parse: unknown keys, wrong types and missing required fields raise ConfigError
// with a JSON-pointer path (and a nearest-key suggestion for typos).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize(const RunConfig& cfg);

// Stable 64-bit FNV-1a hash of the serialized config, as 16 hex digits. Output path and
// thread count are excluded.
std::string config_hash(const RunConfig& cfg);

// Edit distance used for key suggestions.
std::size_t edit_distance(const std::string& a, const std::string& b);

} // namespace qcool::config
