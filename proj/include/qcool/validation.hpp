// validation.hpp — Built-in invariant suite and acceptance criteria

#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "qcool/currents.hpp"

namespace qcool::validation {

struct CheckResult {
    std::string name;
    bool passed{false};
    std::string detail;
    double seconds{0.0};
};

struct Options {
    std::uint64_t seed{20240611};
    int threads{1};
    std::string fixture_dir;   // empty: skip fixture round-trips
};

// Driven two-node network with one ohmic reservoir per node (Markovian backend).
struct TwoNodeFixture {
    network::NetworkSpec net;
    currents::Reservoirs res;
    network::DampingBackend damping;
};

TwoNodeFixture two_node_fixture(double omega_d = 0.7, double gamma_scale = 1.0, double T_hot = 0.8,
                                double T_cold = 0.3);

// Acceptance criteria 1..10; each result carries the measured numbers in `detail`.
CheckResult acceptance_sideband();
CheckResult acceptance_doppler();
CheckResult acceptance_heat_cross_oracle();
CheckResult acceptance_first_law();
CheckResult acceptance_zero_temperature();
CheckResult acceptance_coupling_scaling();
CheckResult acceptance_bounds_oracle();
CheckResult acceptance_landauer(std::uint64_t seed);
CheckResult acceptance_vacancy_renyi(std::uint64_t seed);
CheckResult acceptance_thermalization();

std::vector<CheckResult> run_acceptance(const Options& opts);
// Acceptance plus the cheaper cross-module invariants and fixture round-trips.
std::vector<CheckResult> run_suite(const Options& opts);

void print_results(std::ostream& os, const std::vector<CheckResult>& results);
bool all_passed(const std::vector<CheckResult>& results);

} // namespace qcool::validation
