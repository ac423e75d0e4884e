// run.hpp — Mode dispatch, CSV emission and the exit-code contract

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "qcool/config.hpp"
#include "qcool/errors.hpp"

namespace qcool::run {

enum ExitCode : int {
    kOk = 0,
    kFailedChecks = 1,   // validate mode: at least one check failed
    kConfigError = 2,
    kAccuracyError = 3,
    kPhysicsError = 4,   // instability, regime, domain, model validity
    kInternalError = 5
};

int exit_code(ErrorKind kind) noexcept;

struct RunOptions {
    std::optional<config::Mode> mode;
    std::optional<std::string> out;
    std::optional<int> threads;
    std::uint64_t seed{20240611};
    std::string fixture_dir;
};

// One-line JSON error record: {"error": kind, "exit_code": n, "message": ...}.
std::string error_record(ErrorKind kind, const std::string& message);

// Header comment placed above every CSV table.
std::string csv_header(const config::RunConfig& cfg);

// Executes the configured mode, writing CSV to cfg.output.path (or `out` when empty).
// Returns the exit code; errors are reported on `err` as a JSON line.
int execute(config::RunConfig cfg, const RunOptions& opts, std::ostream& out, std::ostream& err);

// Loads the config file first; parse failures map to exit code 2.
int execute_file(const std::string& config_path, const RunOptions& opts, std::ostream& out, std::ostream& err);

} // namespace qcool::run
