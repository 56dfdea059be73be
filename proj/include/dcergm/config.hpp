#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcergm/experiments.hpp"

#include "json.hpp"

namespace dcergm {

// Declarative run configuration shared by all CLI subcommands. Parsed from a
// JSON file; re-emitted verbatim into every output manifest.
struct RunConfig {
    std::string command; // sample | test | risk | phase | oracle

    // model
    int n = 0;
    double theta = 0.0;
    std::optional<double> beta0;          // constant-beta shorthand
    std::vector<double> beta;             // full vector, wins over beta0
    std::string motif = "two_star";       // edge | two_star | triangle
    std::string encoding = "plus_minus";  // zero_one | plus_minus

    SamplerOptions sampler;

    // sample
    long n_samples = 0;
    bool dump_graphs = false;

    // risk / phase alternatives; (b,t) exponents or explicit (s,A)
    std::optional<double> b, t;
    std::optional<int> s;
    std::optional<double> A;
    std::vector<std::pair<double, double>> cells;
    std::vector<int> n_list;
    int replications = 500;

    std::vector<DetectorConfig> detectors;

    // oracle
    int oracle_n = 3;
    std::optional<int> oracle_s;
    std::optional<double> oracle_A;

    // execution
    std::uint64_t seed = 1;
    unsigned threads = 0; // 0: hardware
    std::string out = "out";
    std::string format = "csv"; // csv | jsonl
    bool create_out = true;

    Model build_model() const;
    Model build_null_model() const; // constant beta0 required
    AlternativeSpec build_alternative(int n_value) const;

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_file(const std::string& path);
    nlohmann::json to_json() const;
};

nlohmann::json detector_to_json(const DetectorConfig& d);
DetectorConfig detector_from_json(const nlohmann::json& j);

SubgraphSpec motif_from_name(const std::string& name);

// Output helpers.
void ensure_out_dir(const std::string& path, bool create);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

nlohmann::json risk_report_to_json(const RiskReport& r);
std::string phase_points_to_csv(const std::vector<PhasePoint>& pts);
std::map<std::string, std::string> phase_csv_columns();
std::map<std::string, std::string> sample_dump_columns();

// Manifest written next to every output: the resolved config plus the list
// of produced files and the column dictionaries.
nlohmann::json make_manifest(const RunConfig& cfg, const std::vector<std::string>& outputs);

} // namespace dcergm
