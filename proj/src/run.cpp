// run.cpp — Mode dispatch, CSV emission and the exit-code contract

#include "qcool/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "qcool/bounds.hpp"
#include "qcool/cooling.hpp"
#include "qcool/currents.hpp"
#include "qcool/validation.hpp"

namespace qcool {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::domain: return "domain";
    case ErrorKind::model_invalid: return "model_invalid";
    case ErrorKind::instability: return "instability";
    case ErrorKind::regime: return "regime";
    case ErrorKind::accuracy: return "accuracy";
    case ErrorKind::contract: return "contract";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::config: return "config";
    }
    return "unknown";
}

namespace run {

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::config:
    case ErrorKind::invalid_input:
    case ErrorKind::contract:
    case ErrorKind::unsupported:
        return kConfigError;
    case ErrorKind::accuracy:
        return kAccuracyError;
    case ErrorKind::instability:
    case ErrorKind::regime:
    case ErrorKind::domain:
    case ErrorKind::model_invalid:
        return kPhysicsError;
    }
    return kInternalError;
}

std::string error_record(ErrorKind kind, const std::string& message) {
    nlohmann::json j;
    j["error"] = to_string(kind);
    j["exit_code"] = exit_code(kind);
    j["message"] = message;
    return j.dump();
}

std::string csv_header(const config::RunConfig& cfg) {
    std::ostringstream os;
    os << "# qcool " << QCOOL_VERSION << " mode=" << config::to_string(cfg.mode)
       << " config_hash=" << config::config_hash(cfg) << " unit_note=" << config::kUnitNote << '\n';
    return os.str();
}

namespace {

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << std::scientific << x;
    return os.str();
}

void run_bounds(const config::RunConfig& cfg, std::ostream& os) {
    if (cfg.bounds_tasks.empty()) throw ConfigError("config /bounds_tasks: bounds mode needs at least one task");
    os << "label,bound,value,log_value,regime_valid\n";
    for (const auto& t : cfg.bounds_tasks) {
        double value = 0.0, log_value = 0.0;
        bool regime = true;
        const auto& p = t.params;
        auto task_regime = [&] { return t.task->W_wc >= 10.0 * t.task->T && t.task->W_wc >= 10.0 * t.task->delta; };
        if (t.bound == "masanes") {
            const auto r = bounds::masanes_error_bound(*t.task, t.dos->build());
            value = r.epsilon_min;
            log_value = r.log_epsilon_min;
            regime = r.regime_valid;
        } else if (t.bound == "bath_family") {
            log_value = bounds::bath_family_log_error_bound(*t.task, p.at("a"), p.at("nu"), p.at("V"));
            value = std::exp(log_value);
            regime = task_regime();
        } else if (t.bound == "radiation") {
            const auto r = bounds::radiation_temperature_bound(*t.task, p.at("V"));
            value = r.value;
            regime = r.regime_valid;
        } else if (t.bound == "time_scaling") {
            const auto r = bounds::time_scaling_bound(*t.task, p.at("t"), p.at("w_rate"), p.at("c_speed"));
            value = r.value;
            regime = r.regime_valid;
        } else if (t.bound == "temperature_from_error") {
            value = bounds::temperature_from_error(*t.task, p.at("epsilon"));
        } else if (t.bound == "landauer") {
            value = bounds::landauer_purity_bound(p.at("lambda_min"), p.at("beta"), p.at("J_B"));
        } else if (t.bound == "scharlau") {
            const double dB = p.at("d_B");
            if (dB != std::floor(dB)) throw ConfigError("config: scharlau d_B must be an integer");
            value = bounds::scharlau_bound(p.at("T"), p.at("delta"), p.at("J_B"), static_cast<int>(dB));
        } else if (t.bound == "allahverdyan") {
            value = bounds::allahverdyan_bound(p.at("T"), p.at("delta"), p.at("J_B"));
        }
        if (t.bound != "masanes" && t.bound != "bath_family") log_value = value > 0.0 ? std::log(value) : -qstat::kInf;
        os << t.label << ',' << t.bound << ',' << num(value) << ',' << num(log_value) << ',' << (regime ? 1 : 0)
           << '\n';
    }
}

void run_simulate(const config::RunConfig& cfg, std::ostream& os) {
    const auto net = cfg.build_network();
    if (cfg.reservoirs.empty()) throw ConfigError("config /reservoirs: simulate mode needs at least one reservoir");
    const auto res = cfg.build_reservoirs(net.n_nodes);
    const auto damping = cfg.build_damping(net, res);
    floquet::FloquetEngine engine(net, damping, cfg.numerics.method, cfg.numerics.floquet_K);

    const auto modes = network::normal_mode_frequencies(net, damping);
    const double wmax = *std::max_element(modes.begin(), modes.end());
    const double hi = 3.0 * wmax + engine.K() * net.omega_d;
    const auto grid = floquet::frequency_grid(engine, 0.0, hi, 401, 20);
    const auto stab = floquet::stability_check(net, damping, grid, std::max(engine.K(), net.max_harmonic()));
    if (!stab.stable) throw InstabilityError("network is not stable: " + stab.detail);

    currents::Options opts;
    opts.quad.rel_tol = cfg.numerics.quad_rel_tol;
    const auto report = currents::heat_report(engine, res, opts);
    currents::average_power(report, opts.closure_tol);
    currents::write_csv(os, report);
}

void run_coolscan(const config::RunConfig& cfg, std::ostream& os, std::ostream* scan_os) {
    if (!cfg.cooling) throw ConfigError("config /cooling: coolscan mode needs a cooling section");
    const auto setup = cfg.cooling->setup();
    const auto result =
        cooling::optimize_drive_frequency(setup, cfg.cooling->range(), cfg.numerics.scan_steps, cfg.cooling->approximation);
    cooling::write_summary_csv(os, result);
    if (scan_os) {
        cooling::write_scan_csv(*scan_os, result);
    } else {
        os << '\n';
        cooling::write_scan_csv(os, result);
    }
}

int run_validate(const config::RunConfig& cfg, const RunOptions& opts, std::ostream& os) {
    validation::Options v;
    v.seed = opts.seed;
    v.threads = cfg.resolved_threads();
    v.fixture_dir = opts.fixture_dir;
    const auto results = validation::run_suite(v);
    validation::print_results(os, results);
    const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
    os << "# " << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " checks passed\n";
    return failed == 0 ? kOk : kFailedChecks;
}

std::string scan_path(const std::string& path) {
    std::filesystem::path p(path);
    return (p.parent_path() / (p.stem().string() + "_scan.csv")).string();
}

} // namespace

int execute(config::RunConfig cfg, const RunOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        if (opts.mode) cfg.mode = *opts.mode;
        if (opts.out) cfg.output.path = *opts.out;
        if (opts.threads) {
            if (*opts.threads < 1) throw ConfigError("--threads must be positive");
            cfg.numerics.threads = *opts.threads;
        }

        std::ofstream file;
        std::ostream* os = &out;
        if (!cfg.output.path.empty()) {
            file.open(cfg.output.path);
            if (!file) throw ConfigError("cannot open output file '" + cfg.output.path + "'");
            os = &file;
        }

        // Buffer the table so a failure midway leaves no partial CSV behind.
        std::ostringstream table;
        int code = kOk;
        switch (cfg.mode) {
        case config::Mode::bounds:
            run_bounds(cfg, table);
            break;
        case config::Mode::simulate:
            run_simulate(cfg, table);
            break;
        case config::Mode::coolscan: {
            if (cfg.output.path.empty()) {
                run_coolscan(cfg, table, nullptr);
            } else {
                std::ostringstream scan;
                run_coolscan(cfg, table, &scan);
                std::ofstream sf(scan_path(cfg.output.path));
                if (!sf) throw ConfigError("cannot open scan output '" + scan_path(cfg.output.path) + "'");
                sf << csv_header(cfg) << scan.str();
            }
            break;
        }
        case config::Mode::validate:
            code = run_validate(cfg, opts, table);
            *os << table.str();
            return code;
        }
        *os << csv_header(cfg) << table.str();
        return code;
    } catch (const Error& e) {
        err << error_record(e.kind(), e.what()) << std::endl;
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        nlohmann::json j;
        j["error"] = "internal";
        j["exit_code"] = static_cast<int>(kInternalError);
        j["message"] = e.what();
        err << j.dump() << std::endl;
        return kInternalError;
    }
}

int execute_file(const std::string& config_path, const RunOptions& opts, std::ostream& out, std::ostream& err) {
    config::RunConfig cfg;
    try {
        cfg = config::load_config(config_path);
    } catch (const Error& e) {
        err << error_record(e.kind(), e.what()) << std::endl;
        return exit_code(e.kind());
    }
    return execute(std::move(cfg), opts, out, err);
}

} // namespace run
} // namespace qcool
