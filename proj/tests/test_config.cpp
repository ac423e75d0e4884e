// test_config.cpp — Strict config parsing, error paths, serialization round trips

#include "doctest.h"

#include <filesystem>
#include <string>

#include "qcool/config.hpp"
#include "qcool/errors.hpp"

using namespace qcool;
using namespace qcool::config;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

} // namespace

TEST_CASE("minimal configs") {
    const auto empty = parse_config("{}");
    CHECK(empty.mode == Mode::validate);
    CHECK_FALSE(empty.network);
    CHECK(empty.reservoirs.empty());
    CHECK_THROWS_AS(empty.build_network(), ConfigError);

    const auto b = parse_config(R"({"mode": "bounds", "bounds_tasks": [
        {"bound": "radiation", "task": {"d_S": 2, "g": 1, "delta": 1, "T": 1, "W_wc": 10}, "V": 1}]})");
    CHECK(b.mode == Mode::bounds);
    REQUIRE(b.bounds_tasks.size() == 1);
    CHECK(b.bounds_tasks[0].label == "radiation");
    CHECK(b.bounds_tasks[0].task->W_wc == 10.0);
    CHECK(b.bounds_tasks[0].params.at("V") == 1.0);
    CHECK_FALSE(b.network);
}

TEST_CASE("network, reservoirs and damping") {
    const auto c = parse_config(R"({
        "mode": "simulate",
        "network": {"V0": [[1.0, 0.2], [0.2, 1.5]], "omega_d": 0.7,
                    "drive": [{"k": 1, "re": [[0.05, 0.0], [0.0, 0.0]], "im": [[0.0, 0.01], [0.01, 0.0]]}]},
        "reservoirs": [{"label": "a", "temperature": 0.5, "sites": [0], "density": {"kind": "ohmic", "gamma": 0.1}},
                       {"label": "b", "temperature": 0.1, "sites": [1], "density": {"kind": "flat", "level": 0.02}}]
    })");
    const auto net = c.build_network();
    CHECK(net.n_nodes == 2);
    CHECK(net.V(1)(0, 1) == cplx(0.0, 0.01));
    const auto res = c.build_reservoirs(2);
    CHECK(res[0].projector(0, 0) == 1.0);
    CHECK(res[1].density(3.0)(1, 1) == doctest::Approx(0.02));
    CHECK(c.build_damping(net, res).Gamma(0, 0) == doctest::Approx(0.1));

    CHECK(contains(error_of(R"({"network": {"V0": [[1, 2], [2, 1]]}})"), "/network"));
    CHECK(contains(error_of(R"({"network": {"V0": [[1, 0], [0]]}})"), "ragged"));
    CHECK(contains(error_of(R"({"network": {"V0": [[1]]}, "reservoirs": [
        {"label": "a", "temperature": 1, "sites": [0], "density": {"kind": "ohmic", "gamma": 0.1}},
        {"label": "a", "temperature": 1, "sites": [0], "density": {"kind": "ohmic", "gamma": 0.1}}]})"),
                   "duplicate reservoir label"));
    CHECK(contains(error_of(R"({"network": {"V0": [[1]]}, "damping": {"kind": "phenomenological"}})"),
                   "needs 'gamma' and 'omega0'"));
}

TEST_CASE("strict keys with suggestions") {
    const std::string e = error_of(R"({"network": {"V0": [[1]]}, "reservoirs": [
        {"label": "a", "temperture": 1, "sites": [0], "density": {"kind": "ohmic", "gamma": 0.1}}]})");
    CHECK(contains(e, "/reservoirs/0/temperture"));
    CHECK(contains(e, "did you mean 'temperature'"));
    CHECK(contains(error_of(R"({"mdoe": "bounds"})"), "did you mean 'mode'"));
    CHECK_FALSE(contains(error_of(R"({"zzzzzzzz": 1})"), "did you mean"));
    CHECK(contains(error_of(R"({"cooling": {"omega_m": 1, "omega_0": 100, "gamma": "x"}})"), "/cooling/gamma"));
    CHECK(contains(error_of(R"({"cooling": {"omega_m": 1, "omega_0": 100}})"), "/cooling/gamma"));
    CHECK(contains(error_of(R"({"bounds_tasks": [{"bound": "nope"}]})"), "unknown bound"));
    CHECK(contains(error_of(R"({"bounds_tasks": [{"bound": "landauer", "lambda_min": 0.1, "beta": 1}]})"), "J_B"));
    CHECK(contains(error_of(R"({"version": "9"})"), "unsupported schema version"));
    CHECK(contains(error_of(R"({"output": {"format": "parquet"}})"), "only 'csv'"));
    CHECK(contains(error_of(R"({"cooling": {"omega_m": 1, "omega_0": 100, "gamma": -1}})"), "/cooling"));
}

TEST_CASE("syntax errors report line and column") {
    const std::string e = error_of("{\n  \"mode\": \"bounds\",\n  \"numerics\": {\"threads\": 1,}\n}");
    CHECK(contains(e, "syntax error"));
    CHECK(contains(e, "line 3"));
    CHECK(contains(e, "column"));
}

TEST_CASE("modes") {
    CHECK(parse_mode("bounds") == Mode::bounds);
    CHECK(parse_mode("simulate") == Mode::simulate);
    CHECK(parse_mode("coolscan") == Mode::coolscan);
    CHECK(parse_mode("validate") == Mode::validate);
    CHECK_THROWS_AS(parse_mode("cool"), ConfigError);
    for (Mode m : {Mode::bounds, Mode::simulate, Mode::coolscan, Mode::validate}) CHECK(parse_mode(to_string(m)) == m);
}

TEST_CASE("edit_distance") {
    CHECK(edit_distance("", "") == 0);
    CHECK(edit_distance("abc", "") == 3);
    CHECK(edit_distance("kitten", "sitting") == 3);
    CHECK(edit_distance("temperture", "temperature") == 1);
    CHECK(edit_distance("flaw", "lawn") == 2);
}

TEST_CASE("shipped fixtures round trip") {
    namespace fs = std::filesystem;
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(QCOOL_FIXTURE_DIR)) {
        if (entry.path().extension() != ".json") continue;
        ++seen;
        CAPTURE(entry.path().string());
        const auto a = load_config(entry.path().string());
        const std::string s1 = serialize(a);
        const auto b = parse_config(s1);
        CHECK(serialize(b) == s1);
        CHECK(config_hash(a) == config_hash(b));
        CHECK(config_hash(a).size() == 16);
    }
    CHECK(seen >= 5);
}

TEST_CASE("config_hash") {
    auto a = parse_config(R"({"mode": "coolscan", "cooling": {"omega_m": 1, "omega_0": 100, "gamma": 0.01}})");
    auto b = a;
    b.output.path = "elsewhere.csv";
    b.numerics.threads = 7;
    CHECK(config_hash(a) == config_hash(b));
    b.cooling->gamma = 0.02;
    CHECK(config_hash(a) != config_hash(b));
    // key order in the input does not matter
    const auto c = parse_config(R"({"cooling": {"gamma": 0.01, "omega_0": 100, "omega_m": 1}, "mode": "coolscan"})");
    CHECK(config_hash(a) == config_hash(c));
    CHECK_THROWS_AS(load_config("/nonexistent/qcool.json"), ConfigError);
}
