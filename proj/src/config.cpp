// config.cpp — Strict JSON run configuration

#include "qcool/config.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "qcool/errors.hpp"

namespace qcool::config {

using json = nlohmann::json;

const char* to_string(Mode m) {
    switch (m) {
    case Mode::bounds: return "bounds";
    case Mode::simulate: return "simulate";
    case Mode::coolscan: return "coolscan";
    case Mode::validate: return "validate";
    }
    return "unknown";
}

Mode parse_mode(const std::string& s) {
    if (s == "bounds") return Mode::bounds;
    if (s == "simulate") return Mode::simulate;
    if (s == "coolscan") return Mode::coolscan;
    if (s == "validate") return Mode::validate;
    throw ConfigError("config /mode: unknown mode '" + s + "' (expected bounds, simulate, coolscan or validate)");
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

namespace {

using Keys = std::vector<const char*>;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError("config " + (path.empty() ? std::string("/") : path) + ": " + msg);
}

std::string join(const std::string& path, const std::string& key) { return path + "/" + key; }

void check_keys(const json& j, const std::string& path, Keys allowed) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& item : j.items()) {
        const std::string& k = item.key();
        if (std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) continue;
        std::string best;
        std::size_t best_d = std::string::npos;
        for (const char* a : allowed) {
            const std::size_t d = edit_distance(k, a);
            if (d < best_d) {
                best_d = d;
                best = a;
            }
        }
        std::string msg = "unknown key '" + k + "'";
        if (!best.empty() && best_d <= std::max<std::size_t>(2, best.size() / 3)) msg += " (did you mean '" + best + "'?)";
        fail(join(path, k), msg);
    }
}

const json* find(const json& j, const char* key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<int>();
}

double number(const json& j, const std::string& path, const char* key) {
    const json* v = find(j, key);
    if (!v) fail(join(path, key), "missing required number");
    return as_number(*v, join(path, key));
}

double number_or(const json& j, const std::string& path, const char* key, double def) {
    const json* v = find(j, key);
    return v ? as_number(*v, join(path, key)) : def;
}

int int_or(const json& j, const std::string& path, const char* key, int def) {
    const json* v = find(j, key);
    return v ? as_int(*v, join(path, key)) : def;
}

std::string string_or(const json& j, const std::string& path, const char* key, const std::string& def,
                      bool required = false) {
    const json* v = find(j, key);
    if (!v) {
        if (required) fail(join(path, key), "missing required string");
        return def;
    }
    if (!v->is_string()) fail(join(path, key), "expected a string");
    return v->get<std::string>();
}

std::vector<double> vector_of(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], path + "/" + std::to_string(i)));
    return out;
}

RMatrix matrix_of(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array of rows");
    const std::size_t rows = v.size();
    std::size_t cols = 0;
    RMatrix m;
    for (std::size_t i = 0; i < rows; ++i) {
        const auto row = vector_of(v[i], path + "/" + std::to_string(i));
        if (i == 0) {
            cols = row.size();
            if (cols == 0) fail(path, "matrix rows must be non-empty");
            m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        } else if (row.size() != cols) {
            fail(path + "/" + std::to_string(i), "ragged matrix row");
        }
        for (std::size_t c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = row[c];
    }
    return m;
}

json to_json(const RMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) r.push_back(m(i, c));
        rows.push_back(r);
    }
    return rows;
}

// ---------------------------------------------------------------------------

DensityConfig parse_density(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    DensityConfig d;
    d.kind = string_or(j, path, "kind", "", true);
    if (d.kind == "delta_mode") {
        check_keys(j, path, {"kind", "strength", "omega_m", "weights"});
        d.strength = number(j, path, "strength");
        d.omega_m = number(j, path, "omega_m");
    } else if (d.kind == "ohmic") {
        check_keys(j, path, {"kind", "gamma", "cutoff", "weights"});
        d.gamma = number(j, path, "gamma");
        d.cutoff = number_or(j, path, "cutoff", 0.0);
    } else if (d.kind == "flat") {
        check_keys(j, path, {"kind", "level", "weights"});
        d.strength = number(j, path, "level");
    } else if (d.kind == "table") {
        check_keys(j, path, {"kind", "omega", "values"});
        const json* w = find(j, "omega");
        const json* v = find(j, "values");
        if (!w || !v) fail(path, "table density needs 'omega' and 'values'");
        d.table_omega = vector_of(*w, join(path, "omega"));
        if (!v->is_array()) fail(join(path, "values"), "expected an array of matrices");
        for (std::size_t i = 0; i < v->size(); ++i) {
            d.table_values.push_back(matrix_of((*v)[i], join(path, "values") + "/" + std::to_string(i)));
        }
        return d;
    } else {
        fail(join(path, "kind"), "unknown density kind '" + d.kind + "' (expected delta_mode, ohmic, flat or table)");
    }
    if (const json* w = find(j, "weights")) d.weights = matrix_of(*w, join(path, "weights"));
    return d;
}

json density_json(const DensityConfig& d) {
    json j;
    j["kind"] = d.kind;
    if (d.kind == "delta_mode") {
        j["strength"] = d.strength;
        j["omega_m"] = d.omega_m;
    } else if (d.kind == "ohmic") {
        j["gamma"] = d.gamma;
        j["cutoff"] = d.cutoff;
    } else if (d.kind == "flat") {
        j["level"] = d.strength;
    } else {
        j["omega"] = d.table_omega;
        json vals = json::array();
        for (const auto& m : d.table_values) vals.push_back(to_json(m));
        j["values"] = vals;
    }
    if (d.weights) j["weights"] = to_json(*d.weights);
    return j;
}

network::NetworkInput parse_network(const json& j, const std::string& path) {
    check_keys(j, path, {"masses", "V0", "drive", "omega_d", "time_reversal"});
    network::NetworkInput in;
    const json* v0 = find(j, "V0");
    if (!v0) fail(join(path, "V0"), "missing required matrix");
    in.V0 = matrix_of(*v0, join(path, "V0"));
    if (const json* m = find(j, "masses")) in.masses = vector_of(*m, join(path, "masses"));
    if (const json* w = find(j, "omega_d")) in.omega_d = as_number(*w, join(path, "omega_d"));
    if (const json* t = find(j, "time_reversal")) {
        if (!t->is_boolean()) fail(join(path, "time_reversal"), "expected a boolean");
        in.time_reversal = t->get<bool>();
    }
    if (const json* d = find(j, "drive")) {
        if (!d->is_array()) fail(join(path, "drive"), "expected an array of {k, re, im}");
        for (std::size_t i = 0; i < d->size(); ++i) {
            const std::string p = join(path, "drive") + "/" + std::to_string(i);
            const json& e = (*d)[i];
            check_keys(e, p, {"k", "re", "im"});
            const json* k = find(e, "k");
            const json* re = find(e, "re");
            if (!k || !re) fail(p, "drive component needs 'k' and 're'");
            const int kk = as_int(*k, join(p, "k"));
            const RMatrix r = matrix_of(*re, join(p, "re"));
            CMatrix c = r.cast<cplx>();
            if (const json* im = find(e, "im")) {
                const RMatrix mi = matrix_of(*im, join(p, "im"));
                if (mi.rows() != r.rows() || mi.cols() != r.cols()) fail(join(p, "im"), "shape differs from 're'");
                c += cplx(0.0, 1.0) * mi.cast<cplx>();
            }
            if (in.Vk.count(kk)) fail(join(p, "k"), "duplicate harmonic");
            in.Vk[kk] = c;
        }
    }
    return in;
}

json network_json(const network::NetworkInput& in) {
    json j;
    j["V0"] = to_json(in.V0);
    if (!in.masses.empty()) j["masses"] = in.masses;
    if (in.omega_d) j["omega_d"] = *in.omega_d;
    if (in.time_reversal) j["time_reversal"] = *in.time_reversal;
    if (!in.Vk.empty()) {
        json d = json::array();
        for (const auto& [k, m] : in.Vk) {
            json e;
            e["k"] = k;
            e["re"] = to_json(m.real());
            if (m.imag().cwiseAbs().maxCoeff() > 0.0) e["im"] = to_json(m.imag());
            d.push_back(e);
        }
        j["drive"] = d;
    }
    return j;
}

bounds::CoolingTask parse_task(const json& j, const std::string& path) {
    check_keys(j, path, {"d_S", "g", "delta", "T", "W_wc"});
    bounds::CoolingTask t;
    const json* ds = find(j, "d_S");
    const json* g = find(j, "g");
    if (!ds || !g) fail(path, "task needs d_S and g");
    t.d_S = as_int(*ds, join(path, "d_S"));
    t.g = as_int(*g, join(path, "g"));
    t.delta = number(j, path, "delta");
    t.T = number(j, path, "T");
    t.W_wc = number(j, path, "W_wc");
    return t;
}

DoSConfig parse_dos(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    DoSConfig d;
    d.kind = string_or(j, path, "kind", "", true);
    if (d.kind == "power_law") {
        check_keys(j, path, {"kind", "a", "nu", "volume"});
        d.a = number(j, path, "a");
        d.nu = number(j, path, "nu");
        d.volume = number(j, path, "volume");
    } else if (d.kind == "radiation") {
        check_keys(j, path, {"kind", "volume"});
        d.volume = number(j, path, "volume");
    } else if (d.kind == "tabulated") {
        check_keys(j, path, {"kind", "energies", "ln_omega"});
        const json* e = find(j, "energies");
        const json* l = find(j, "ln_omega");
        if (!e || !l) fail(path, "tabulated DoS needs 'energies' and 'ln_omega'");
        d.energies = vector_of(*e, join(path, "energies"));
        d.ln_omega = vector_of(*l, join(path, "ln_omega"));
    } else {
        fail(join(path, "kind"), "unknown DoS kind '" + d.kind + "' (expected power_law, radiation or tabulated)");
    }
    return d;
}

json dos_json(const DoSConfig& d) {
    json j;
    j["kind"] = d.kind;
    if (d.kind == "power_law") {
        j["a"] = d.a;
        j["nu"] = d.nu;
        j["volume"] = d.volume;
    } else if (d.kind == "radiation") {
        j["volume"] = d.volume;
    } else {
        j["energies"] = d.energies;
        j["ln_omega"] = d.ln_omega;
    }
    return j;
}

struct BoundShape {
    bool task;
    bool dos;
    std::vector<const char*> params;
};

const std::map<std::string, BoundShape>& bound_shapes() {
    static const std::map<std::string, BoundShape> shapes{
        {"masanes", {true, true, {}}},
        {"bath_family", {true, false, {"a", "nu", "V"}}},
        {"radiation", {true, false, {"V"}}},
        {"time_scaling", {true, false, {"t", "w_rate", "c_speed"}}},
        {"temperature_from_error", {true, false, {"epsilon"}}},
        {"landauer", {false, false, {"lambda_min", "beta", "J_B"}}},
        {"scharlau", {false, false, {"T", "delta", "J_B", "d_B"}}},
        {"allahverdyan", {false, false, {"T", "delta", "J_B"}}},
    };
    return shapes;
}

BoundsTaskConfig parse_bounds_task(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    BoundsTaskConfig b;
    b.bound = string_or(j, path, "bound", "", true);
    const auto it = bound_shapes().find(b.bound);
    if (it == bound_shapes().end()) {
        std::string names;
        for (const auto& [n, s] : bound_shapes()) names += (names.empty() ? "" : ", ") + n;
        fail(join(path, "bound"), "unknown bound '" + b.bound + "' (expected one of " + names + ")");
    }
    const BoundShape& shape = it->second;
    std::vector<const char*> allowed{"label", "bound"};
    if (shape.task) allowed.push_back("task");
    if (shape.dos) allowed.push_back("dos");
    for (const char* p : shape.params) allowed.push_back(p);
    check_keys(j, path, allowed);
    b.label = string_or(j, path, "label", b.bound);
    if (shape.task) {
        const json* t = find(j, "task");
        if (!t) fail(join(path, "task"), "missing required task");
        b.task = parse_task(*t, join(path, "task"));
    }
    if (shape.dos) {
        const json* d = find(j, "dos");
        if (!d) fail(join(path, "dos"), "missing required dos");
        b.dos = parse_dos(*d, join(path, "dos"));
    }
    for (const char* p : shape.params) b.params[p] = number(j, path, p);
    return b;
}

json bounds_task_json(const BoundsTaskConfig& b) {
    json j;
    j["label"] = b.label;
    j["bound"] = b.bound;
    if (b.task) {
        j["task"] = {{"d_S", b.task->d_S}, {"g", b.task->g}, {"delta", b.task->delta}, {"T", b.task->T},
                     {"W_wc", b.task->W_wc}};
    }
    if (b.dos) j["dos"] = dos_json(*b.dos);
    for (const auto& [k, v] : b.params) j[k] = v;
    return j;
}

CoolingConfig parse_cooling(const json& j, const std::string& path) {
    check_keys(j, path, {"omega_m", "omega_0", "gamma", "v", "k_max", "dump", "omega_d_range", "approximation"});
    CoolingConfig c;
    c.omega_m = number(j, path, "omega_m");
    c.omega_0 = number(j, path, "omega_0");
    c.gamma = number(j, path, "gamma");
    c.v = number_or(j, path, "v", c.v);
    c.k_max = int_or(j, path, "k_max", c.k_max);
    if (const json* d = find(j, "dump")) {
        c.dump = parse_density(*d, join(path, "dump"));
    } else {
        c.dump.kind = "flat";
        c.dump.strength = 1.0;
    }
    if (const json* r = find(j, "omega_d_range")) {
        const auto v = vector_of(*r, join(path, "omega_d_range"));
        if (v.size() != 2) fail(join(path, "omega_d_range"), "expected [lo, hi]");
        c.omega_d_range = {v[0], v[1]};
    }
    const std::string a = string_or(j, path, "approximation", "weak");
    if (a == "weak") c.approximation = cooling::Approximation::weak;
    else if (a == "balance") c.approximation = cooling::Approximation::balance;
    else fail(join(path, "approximation"), "expected 'weak' or 'balance'");
    return c;
}

json cooling_json(const CoolingConfig& c) {
    json j;
    j["omega_m"] = c.omega_m;
    j["omega_0"] = c.omega_0;
    j["gamma"] = c.gamma;
    j["v"] = c.v;
    j["k_max"] = c.k_max;
    j["dump"] = density_json(c.dump);
    if (c.omega_d_range.second > 0.0) j["omega_d_range"] = {c.omega_d_range.first, c.omega_d_range.second};
    j["approximation"] = cooling::to_string(c.approximation);
    return j;
}

Numerics parse_numerics(const json& j, const std::string& path) {
    check_keys(j, path, {"quad_rel_tol", "floquet_K", "scan_steps", "threads", "method"});
    Numerics n;
    n.quad_rel_tol = number_or(j, path, "quad_rel_tol", n.quad_rel_tol);
    auto auto_or_int = [&](const char* key, int def) {
        const json* v = find(j, key);
        if (!v) return def;
        if (v->is_string()) {
            if (v->get<std::string>() != "auto") fail(join(path, key), "expected an integer or \"auto\"");
            return def;
        }
        return as_int(*v, join(path, key));
    };
    n.floquet_K = auto_or_int("floquet_K", -1);
    n.threads = auto_or_int("threads", 0);
    n.scan_steps = int_or(j, path, "scan_steps", n.scan_steps);
    const std::string m = string_or(j, path, "method", "harmonic_balance");
    if (m == "harmonic_balance") n.method = floquet::Method::harmonic_balance;
    else if (m == "perturbative") n.method = floquet::Method::perturbative;
    else fail(join(path, "method"), "expected 'harmonic_balance' or 'perturbative'");
    if (!(n.quad_rel_tol > 0.0 && n.quad_rel_tol < 1.0)) fail(join(path, "quad_rel_tol"), "must lie in (0, 1)");
    if (n.floquet_K < -1 || n.floquet_K > floquet::kMaxK) fail(join(path, "floquet_K"), "must be \"auto\" or in [0, 25]");
    if (n.threads < 0) fail(join(path, "threads"), "must be \"auto\" or positive");
    if (n.scan_steps < 3) fail(join(path, "scan_steps"), "must be at least 3");
    return n;
}

// nlohmann reports a byte offset; translate it to line and column.
std::string locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

} // namespace

network::SpectralDensity DensityConfig::build(const RMatrix& projector) const {
    const RMatrix w = weights.value_or(projector);
    if (kind == "delta_mode") return network::SpectralDensity::delta(strength, omega_m, w);
    if (kind == "ohmic") return network::SpectralDensity::ohmic(gamma, cutoff, w);
    if (kind == "flat") return network::SpectralDensity::flat(strength, w);
    if (kind == "table") return network::SpectralDensity::table(table_omega, table_values);
    throw ConfigError("config: unknown density kind '" + kind + "'");
}

bounds::DoSModel DoSConfig::build() const {
    if (kind == "power_law") return bounds::DoSModel::power_law(a, nu, volume);
    if (kind == "radiation") return bounds::DoSModel::radiation(volume);
    if (kind == "tabulated") return bounds::DoSModel::tabulated(energies, ln_omega);
    throw ConfigError("config: unknown DoS kind '" + kind + "'");
}

cooling::CoolingSetup CoolingConfig::setup() const {
    cooling::CoolingSetup s;
    s.omega_m = omega_m;
    s.omega_0 = omega_0;
    s.gamma = gamma;
    s.v = v;
    s.k_max = k_max;
    s.I_B = dump.build(RMatrix::Identity(1, 1));
    s.validate();
    return s;
}

std::pair<double, double> CoolingConfig::range() const {
    if (omega_d_range.second > 0.0) return omega_d_range;
    return {1.01 * omega_m, 2.0 * omega_0};
}

network::NetworkSpec RunConfig::build_network() const {
    if (!network) throw ConfigError("config /network: this mode needs a network");
    try {
        return network::build_network(*network);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("config /network: ") + e.what());
    }
}

std::vector<network::ReservoirSpec> RunConfig::build_reservoirs(int n_nodes) const {
    std::vector<network::ReservoirSpec> out;
    std::set<std::string> labels;
    for (std::size_t i = 0; i < reservoirs.size(); ++i) {
        const auto& r = reservoirs[i];
        const std::string path = "/reservoirs/" + std::to_string(i);
        if (!labels.insert(r.label).second) fail(join(path, "label"), "duplicate reservoir label '" + r.label + "'");
        try {
            RMatrix P = RMatrix::Zero(n_nodes, n_nodes);
            for (int s : r.sites)
                if (s >= 0 && s < n_nodes) P(s, s) = 1.0;
            out.push_back(network::ReservoirSpec::make(r.label, r.temperature, r.density.build(P), r.sites, n_nodes));
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            fail(path, e.what());
        }
    }
    return out;
}

network::DampingBackend RunConfig::build_damping(const network::NetworkSpec& net,
                                                 const std::vector<network::ReservoirSpec>& res) const {
    const DampingConfig d = damping.value_or(DampingConfig{});
    try {
        if (d.kind == "markovian_ohmic") return network::make_markovian_backend(net, res);
        if (d.kind == "phenomenological") {
            RVector g = Eigen::Map<const RVector>(d.gamma.data(), static_cast<Eigen::Index>(d.gamma.size()));
            RVector w = Eigen::Map<const RVector>(d.omega0.data(), static_cast<Eigen::Index>(d.omega0.size()));
            return network::make_phenomenological_backend(net, g, w);
        }
        network::DampingBackend b;
        b.kind = network::DampingKind::tabulated_kernel;
        network::validate_backend(net, b);
        return b;
    } catch (const UnsupportedError&) {
        throw;
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("config /damping: ") + e.what());
    }
}

int RunConfig::resolved_threads() const {
    if (numerics.threads > 0) return numerics.threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config syntax error at " + locate(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
    }
    check_keys(root, "",
               {"version", "mode", "network", "reservoirs", "damping", "bounds_tasks", "cooling", "numerics", "output"});
    RunConfig cfg;
    cfg.version = string_or(root, "", "version", kSchemaVersion);
    if (cfg.version != kSchemaVersion) fail("/version", "unsupported schema version '" + cfg.version + "'");
    cfg.mode = parse_mode(string_or(root, "", "mode", "validate"));

    if (const json* n = find(root, "network")) cfg.network = parse_network(*n, "/network");
    if (const json* r = find(root, "reservoirs")) {
        if (!r->is_array()) fail("/reservoirs", "expected an array");
        for (std::size_t i = 0; i < r->size(); ++i) {
            const std::string p = "/reservoirs/" + std::to_string(i);
            const json& e = (*r)[i];
            check_keys(e, p, {"label", "temperature", "sites", "density"});
            ReservoirConfig rc;
            rc.label = string_or(e, p, "label", "", true);
            rc.temperature = number(e, p, "temperature");
            const json* s = find(e, "sites");
            if (!s || !s->is_array()) fail(join(p, "sites"), "expected an array of node indices");
            for (std::size_t k = 0; k < s->size(); ++k) rc.sites.push_back(as_int((*s)[k], join(p, "sites") + "/" + std::to_string(k)));
            const json* d = find(e, "density");
            if (!d) fail(join(p, "density"), "missing required density");
            rc.density = parse_density(*d, join(p, "density"));
            cfg.reservoirs.push_back(std::move(rc));
        }
    }
    if (const json* d = find(root, "damping")) {
        check_keys(*d, "/damping", {"kind", "gamma", "omega0"});
        DampingConfig dc;
        dc.kind = string_or(*d, "/damping", "kind", "", true);
        if (dc.kind != "markovian_ohmic" && dc.kind != "phenomenological" && dc.kind != "tabulated_kernel") {
            fail("/damping/kind", "expected markovian_ohmic, phenomenological or tabulated_kernel");
        }
        if (const json* g = find(*d, "gamma")) dc.gamma = vector_of(*g, "/damping/gamma");
        if (const json* w = find(*d, "omega0")) dc.omega0 = vector_of(*w, "/damping/omega0");
        if (dc.kind == "phenomenological" && (dc.gamma.empty() || dc.omega0.empty())) {
            fail("/damping", "phenomenological damping needs 'gamma' and 'omega0'");
        }
        cfg.damping = dc;
    }
    if (const json* b = find(root, "bounds_tasks")) {
        if (!b->is_array()) fail("/bounds_tasks", "expected an array");
        for (std::size_t i = 0; i < b->size(); ++i) {
            cfg.bounds_tasks.push_back(parse_bounds_task((*b)[i], "/bounds_tasks/" + std::to_string(i)));
        }
    }
    if (const json* c = find(root, "cooling")) cfg.cooling = parse_cooling(*c, "/cooling");
    if (const json* n = find(root, "numerics")) cfg.numerics = parse_numerics(*n, "/numerics");
    if (const json* o = find(root, "output")) {
        check_keys(*o, "/output", {"path", "format"});
        cfg.output.path = string_or(*o, "/output", "path", "");
        cfg.output.format = string_or(*o, "/output", "format", "csv");
        if (cfg.output.format != "csv") fail("/output/format", "only 'csv' is supported");
    }

    // Semantic checks on the physical inputs, reported with their config path.
    if (cfg.network) {
        const auto net = cfg.build_network();
        const auto res = cfg.build_reservoirs(net.n_nodes);
        if (cfg.damping && cfg.damping->kind != "tabulated_kernel") cfg.build_damping(net, res);
    }
    if (cfg.cooling) {
        try {
            cfg.cooling->setup();
        } catch (const Error& e) {
            fail("/cooling", e.what());
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize(const RunConfig& cfg) {
    json j;
    j["version"] = cfg.version;
    j["mode"] = to_string(cfg.mode);
    if (cfg.network) j["network"] = network_json(*cfg.network);
    if (!cfg.reservoirs.empty()) {
        json r = json::array();
        for (const auto& rc : cfg.reservoirs) {
            r.push_back({{"label", rc.label}, {"temperature", rc.temperature}, {"sites", rc.sites},
                         {"density", density_json(rc.density)}});
        }
        j["reservoirs"] = r;
    }
    if (cfg.damping) {
        json d;
        d["kind"] = cfg.damping->kind;
        if (!cfg.damping->gamma.empty()) d["gamma"] = cfg.damping->gamma;
        if (!cfg.damping->omega0.empty()) d["omega0"] = cfg.damping->omega0;
        j["damping"] = d;
    }
    if (!cfg.bounds_tasks.empty()) {
        json b = json::array();
        for (const auto& t : cfg.bounds_tasks) b.push_back(bounds_task_json(t));
        j["bounds_tasks"] = b;
    }
    if (cfg.cooling) j["cooling"] = cooling_json(*cfg.cooling);
    json n;
    n["quad_rel_tol"] = cfg.numerics.quad_rel_tol;
    n["floquet_K"] = cfg.numerics.floquet_K < 0 ? json("auto") : json(cfg.numerics.floquet_K);
    n["scan_steps"] = cfg.numerics.scan_steps;
    n["threads"] = cfg.numerics.threads == 0 ? json("auto") : json(cfg.numerics.threads);
    n["method"] = floquet::to_string(cfg.numerics.method);
    j["numerics"] = n;
    json o;
    if (!cfg.output.path.empty()) o["path"] = cfg.output.path;
    o["format"] = cfg.output.format;
    j["output"] = o;
    return j.dump(2);
}

std::string config_hash(const RunConfig& cfg) {
    RunConfig c = cfg;
    c.output.path.clear();   // neither changes the numbers
    c.numerics.threads = 0;
    const std::string s = serialize(c);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

} // namespace qcool::config
