// qcool.cpp — Command-line front end: bounds, simulate, coolscan, validate

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "qcool/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"qcool: unattainability bounds and driven-network refrigeration"};
    app.set_version_flag("--version", QCOOL_VERSION);

    std::string config_path;
    std::string mode;
    std::string out;
    int threads = 0;
    std::uint64_t seed = 20240611;
    std::string fixture_dir = QCOOL_FIXTURE_DIR;

    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--mode", mode, "Override the configured mode")
        ->check(CLI::IsMember({"bounds", "simulate", "coolscan", "validate"}));
    app.add_option("--out", out, "Output CSV path (default: stdout)");
    app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Seed for the sampling oracles");
    app.add_option("--fixtures", fixture_dir, "Fixture directory checked by validate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qcool::run::kConfigError;
    }

    qcool::run::RunOptions opts;
    if (!mode.empty()) opts.mode = qcool::config::parse_mode(mode);
    if (!out.empty()) opts.out = out;
    if (threads > 0) opts.threads = threads;
    opts.seed = seed;
    if (std::filesystem::is_directory(fixture_dir)) opts.fixture_dir = fixture_dir;

    if (config_path.empty()) {
        if (!opts.mode || *opts.mode != qcool::config::Mode::validate) {
            std::cerr << qcool::run::error_record(qcool::ErrorKind::config, "--config is required unless --mode validate")
                      << std::endl;
            return qcool::run::kConfigError;
        }
        return qcool::run::execute(qcool::config::RunConfig{}, opts, std::cout, std::cerr);
    }
    return qcool::run::execute_file(config_path, opts, std::cout, std::cerr);
}
