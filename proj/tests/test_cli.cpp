#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dcergm/config.hpp"

using namespace dcergm;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    fs::path dir = fs::temp_directory_path() / "dcergm_cli";
    fs::create_directories(dir);
    fs::path out = dir / "stdout.txt";
    std::string cmd = std::string(DCERGM_BIN) + " " + args + " >" + out.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out);
    std::ostringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

fs::path write_tmp(const std::string& name, const std::string& content) {
    fs::path dir = fs::temp_directory_path() / "dcergm_cli";
    fs::create_directories(dir);
    fs::path p = dir / name;
    std::ofstream f(p);
    f << content;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("sample subcommand writes deterministic dumps") {
    fs::path outdir = fs::temp_directory_path() / "dcergm_cli" / "sample_out";
    fs::remove_all(outdir);
    json cfg = {
        {"command", "sample"},
        {"model", {{"n", 12}, {"theta", 0.4}, {"beta0", 0.0}}},
        {"sampler", {{"kind", "aux"}, {"burnin_sweeps", 50}, {"thinning_sweeps", 1}}},
        {"n_samples", 25},
        {"seed", 7},
        {"format", "jsonl"},
        {"out", outdir.string()},
    };
    fs::path cfg_path = write_tmp("sample.json", cfg.dump());
    RunResult r1 = run_cli("sample --config " + cfg_path.string());
    CHECK(r1.exit_code == 0);
    std::string dump1 = slurp(outdir / "samples.jsonl");
    int lines = 0;
    std::istringstream is(dump1);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) {
            ++lines;
            json rec = json::parse(line);
            CHECK(rec.contains("sum_degrees"));
            CHECK(rec.contains("phi_bar"));
        }
    CHECK(lines == 25);

    RunResult r2 = run_cli("sample --config " + cfg_path.string());
    CHECK(r2.exit_code == 0);
    CHECK(slurp(outdir / "samples.jsonl") == dump1);

    // manifest round-trips to an equivalent config (threads get resolved)
    json manifest = json::parse(slurp(outdir / "manifest.json"));
    RunConfig parsed = RunConfig::from_json(manifest.at("config"));
    json got = parsed.to_json();
    json want = RunConfig::from_json(cfg).to_json();
    got.erase("threads");
    want.erase("threads");
    CHECK(got == want);

    // invalid model is a config error
    json bad = cfg;
    bad["model"]["theta"] = -0.5;
    fs::path bad_path = write_tmp("sample_bad.json", bad.dump());
    RunResult rb = run_cli("sample --config " + bad_path.string());
    CHECK(rb.exit_code == 1);
}

TEST_CASE("test subcommand decides from a graph file") {
    json cfg = {
        {"command", "test"},
        {"model",
         {{"n", 6}, {"theta", 0.0}, {"beta0", 0.0}, {"motif", "two_star"}, {"encoding", "zero_one"}}},
        {"detectors",
         json::array({{{"kind", "cond_centered_sum"},
                       {"threshold", {{"mode", "explicit"}, {"value", 0.0}}}}})},
        {"out", (fs::temp_directory_path() / "dcergm_cli" / "test_out").string()},
    };
    fs::path cfg_path = write_tmp("test.json", cfg.dump());

    fs::path empty = write_tmp("empty.graph", "6\n");
    RunResult r1 = run_cli("test --config " + cfg_path.string() + " --graph " + empty.string());
    CHECK(r1.exit_code == 0);
    CHECK(json::parse(r1.stdout_text)["decision"] == "accept");

    std::string kn = "6\n";
    for (int i = 1; i <= 6; ++i)
        for (int j = i + 1; j <= 6; ++j) kn += std::to_string(i) + " " + std::to_string(j) + "\n";
    fs::path full = write_tmp("kn.graph", kn);
    RunResult r2 = run_cli("test --config " + cfg_path.string() + " --graph " + full.string());
    CHECK(r2.exit_code == 0);
    CHECK(json::parse(r2.stdout_text)["decision"] == "reject");

    fs::path bad = write_tmp("bad.graph", "6\n1 2\nnot an edge\n");
    RunResult r3 = run_cli("test --config " + cfg_path.string() + " --graph " + bad.string());
    CHECK(r3.exit_code == 1);
    CHECK(r3.stdout_text.find("line 3") != std::string::npos);
}

TEST_CASE("oracle subcommand runs the ground-truth battery") {
    fs::path outdir = fs::temp_directory_path() / "dcergm_cli" / "oracle_out";
    json cfg = {
        {"command", "oracle"},
        {"model", {{"n", 3}, {"theta", 0.0}, {"beta0", 0.0}}},
        {"oracle", {{"n", 3}, {"s", 1}, {"A", 0.2}}},
        {"out", outdir.string()},
    };
    fs::path cfg_path = write_tmp("oracle.json", cfg.dump());
    RunResult r = run_cli("oracle --config " + cfg_path.string());
    CHECK(r.exit_code == 0);
    json report = json::parse(slurp(outdir / "oracle.json"));
    CHECK(report["all_pass"] == true);
    CHECK(report["checks"].size() >= 3);
}

TEST_CASE("phase subcommand emits one row per cell") {
    fs::path outdir = fs::temp_directory_path() / "dcergm_cli" / "phase_out";
    fs::remove_all(outdir);
    json cfg = {
        {"command", "phase"},
        {"model", {{"n", 0}, {"theta", 0.3}, {"beta0", 0.0}}},
        {"sampler", {{"kind", "aux"}, {"burnin_sweeps", 60}, {"thinning_sweeps", 1}}},
        {"cells", json::array({json::array({0.7, -0.2}), json::array({0.4, -0.3})})},
        {"n_list", json::array({12, 16})},
        {"detectors",
         json::array({{{"kind", "cond_centered_sum"},
                       {"threshold", {{"mode", "schedule"}, {"c", 2.0}, {"gamma", 1.25}}}},
                      {{"kind", "total_degree"},
                       {"threshold", {{"mode", "schedule"}, {"c", 1.0}, {"gamma", 1.6}}}}})},
        {"replications", 100},
        {"seed", 11},
        {"threads", 2},
        {"out", outdir.string()},
    };
    fs::path cfg_path = write_tmp("phase.json", cfg.dump());
    RunResult r = run_cli("phase --config " + cfg_path.string());
    CHECK(r.exit_code == 0);
    std::string csv = slurp(outdir / "phase.csv");
    int rows = -1; // header
    std::istringstream is(csv);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2 * 2 * 2); // |cells| * |n_list| * |detectors|

    json manifest = json::parse(slurp(outdir / "manifest.json"));
    CHECK(manifest.contains("columns"));
    RunConfig parsed = RunConfig::from_json(manifest.at("config"));
    CHECK(parsed.cells.size() == 2);
    CHECK(parsed.to_json()["detectors"] == cfg["detectors"]);

    // refusing to create the output directory is a config error
    json noc = cfg;
    noc["out"] = (fs::temp_directory_path() / "dcergm_cli" / "missing_dir").string();
    noc["create_out"] = false;
    fs::remove_all(noc["out"].get<std::string>());
    fs::path noc_path = write_tmp("phase_nocreate.json", noc.dump());
    RunResult r2 = run_cli("phase --config " + noc_path.string());
    CHECK(r2.exit_code == 1);
}

TEST_CASE("risk subcommand with an explicit alternative") {
    fs::path outdir = fs::temp_directory_path() / "dcergm_cli" / "risk_out";
    json cfg = {
        {"command", "risk"},
        {"model", {{"n", 20}, {"theta", 0.3}, {"beta0", 0.0}}},
        {"sampler", {{"kind", "aux"}, {"burnin_sweeps", 60}, {"thinning_sweeps", 1}}},
        {"alternative", {{"s", 10}, {"A", 4.0}}},
        {"detectors",
         json::array({{{"kind", "cond_centered_sum"},
                       {"threshold", {{"mode", "calibrated"}, {"alpha", 0.1}, {"replications", 150}}}}})},
        {"replications", 120},
        {"seed", 13},
        {"out", outdir.string()},
    };
    fs::path cfg_path = write_tmp("risk.json", cfg.dump());
    RunResult r = run_cli("risk --config " + cfg_path.string());
    CHECK(r.exit_code == 0);
    json arr = json::parse(slurp(outdir / "risk.json"));
    REQUIRE(arr.size() == 1);
    CHECK(arr[0]["risk"].get<double>() < 0.5);
    CHECK(arr[0]["s"] == 10);
}

TEST_CASE("preset configs parse") {
    for (const char* name : {"theta1_phase.json", "theta2_phase.json", "theta3_phase.json",
                             "figure1_grid.json", "null_sample.json"}) {
        fs::path p = fs::path(DCERGM_PRESET_DIR) / name;
        REQUIRE_MESSAGE(fs::exists(p), name);
        RunConfig cfg = RunConfig::from_file(p.string());
        CHECK(!cfg.command.empty());
    }
}
