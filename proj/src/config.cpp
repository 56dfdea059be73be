#include "dcergm/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace dcergm {

using nlohmann::json;

SubgraphSpec motif_from_name(const std::string& name) {
    if (name == "edge") return SubgraphSpec::edge();
    if (name == "two_star") return SubgraphSpec::two_star();
    if (name == "triangle") return SubgraphSpec::triangle();
    throw std::invalid_argument("unknown motif: " + name);
}

namespace {

Encoding encoding_from_name(const std::string& name) {
    if (name == "zero_one") return Encoding::ZeroOne;
    if (name == "plus_minus") return Encoding::PlusMinus;
    throw std::invalid_argument("unknown encoding: " + name);
}

SamplerKind sampler_from_name(const std::string& name) {
    if (name == "glauber") return SamplerKind::Glauber;
    if (name == "aux") return SamplerKind::Aux;
    if (name == "exact") return SamplerKind::Exact;
    throw std::invalid_argument("unknown sampler kind: " + name);
}

const char* sampler_name(SamplerKind k) {
    switch (k) {
        case SamplerKind::Glauber: return "glauber";
        case SamplerKind::Aux: return "aux";
        default: return "exact";
    }
}

} // namespace

nlohmann::json detector_to_json(const DetectorConfig& d) {
    json t;
    switch (d.threshold.mode) {
        case ThresholdSpec::Mode::Explicit:
            t = {{"mode", "explicit"}, {"value", d.threshold.value}};
            break;
        case ThresholdSpec::Mode::Schedule:
            t = {{"mode", "schedule"}, {"c", d.threshold.c}, {"gamma", d.threshold.gamma}};
            break;
        case ThresholdSpec::Mode::Calibrated:
            t = {{"mode", "calibrated"},
                 {"alpha", d.threshold.alpha},
                 {"replications", d.threshold.replications}};
            break;
    }
    return {{"kind", detector_name(d.kind)}, {"threshold", t}};
}

DetectorConfig detector_from_json(const nlohmann::json& j) {
    DetectorConfig d;
    d.kind = detector_from_name(j.at("kind").get<std::string>());
    const json& t = j.at("threshold");
    std::string mode = t.at("mode").get<std::string>();
    if (mode == "explicit") {
        d.threshold = ThresholdSpec::explicit_value(t.at("value").get<double>());
    } else if (mode == "schedule") {
        d.threshold = ThresholdSpec::schedule(t.at("c").get<double>(), t.at("gamma").get<double>());
    } else if (mode == "calibrated") {
        d.threshold = ThresholdSpec::calibrated(t.at("alpha").get<double>(),
                                                t.at("replications").get<int>());
    } else {
        throw std::invalid_argument("unknown threshold mode: " + mode);
    }
    return d;
}

Model RunConfig::build_model() const {
    std::vector<double> bv = beta;
    if (bv.empty()) bv.assign(n, beta0.value_or(0.0));
    if (static_cast<int>(bv.size()) != n)
        throw std::invalid_argument("config: beta length must equal n");
    return Model(n, theta, std::move(bv), motif_from_name(motif), encoding_from_name(encoding));
}

Model RunConfig::build_null_model() const {
    if (!beta.empty())
        throw std::invalid_argument("config: null model expects a constant beta0, not a beta vector");
    return Model(n, theta, std::vector<double>(n, beta0.value_or(0.0)), motif_from_name(motif),
                 encoding_from_name(encoding));
}

AlternativeSpec RunConfig::build_alternative(int n_value) const {
    double base = beta0.value_or(0.0);
    if (s && A) return AlternativeSpec(base, *s, *A);
    if (b && t)
        return AlternativeSpec(base, signal_count_from_exponent(n_value, *b),
                               signal_strength_from_exponent(n_value, *t));
    throw std::invalid_argument("config: alternative needs (s, A) or exponents (b, t)");
}

RunConfig RunConfig::from_json(const json& j) {
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    if (j.contains("model")) {
        const json& m = j.at("model");
        c.n = m.value("n", 0);
        c.theta = m.value("theta", 0.0);
        if (m.contains("beta0")) c.beta0 = m.at("beta0").get<double>();
        if (m.contains("beta")) c.beta = m.at("beta").get<std::vector<double>>();
        c.motif = m.value("motif", "two_star");
        c.encoding = m.value("encoding", "plus_minus");
    }
    if (j.contains("sampler")) {
        const json& s = j.at("sampler");
        c.sampler.kind = sampler_from_name(s.value("kind", "aux"));
        c.sampler.burnin_sweeps = s.value("burnin_sweeps", -1L);
        c.sampler.thinning_sweeps = s.value("thinning_sweeps", 1L);
    }
    c.n_samples = j.value("n_samples", 0L);
    c.dump_graphs = j.value("dump_graphs", false);
    if (j.contains("alternative")) {
        const json& a = j.at("alternative");
        if (a.contains("b")) c.b = a.at("b").get<double>();
        if (a.contains("t")) c.t = a.at("t").get<double>();
        if (a.contains("s")) c.s = a.at("s").get<int>();
        if (a.contains("A")) c.A = a.at("A").get<double>();
    }
    if (j.contains("cells"))
        for (const auto& cell : j.at("cells"))
            c.cells.emplace_back(cell.at(0).get<double>(), cell.at(1).get<double>());
    if (j.contains("n_list")) c.n_list = j.at("n_list").get<std::vector<int>>();
    c.replications = j.value("replications", 500);
    if (j.contains("detectors"))
        for (const auto& d : j.at("detectors")) c.detectors.push_back(detector_from_json(d));
    if (j.contains("oracle")) {
        const json& o = j.at("oracle");
        c.oracle_n = o.value("n", 3);
        if (o.contains("s")) c.oracle_s = o.at("s").get<int>();
        if (o.contains("A")) c.oracle_A = o.at("A").get<double>();
    }
    c.seed = j.value("seed", static_cast<std::uint64_t>(1));
    c.threads = j.value("threads", 0u);
    c.out = j.value("out", std::string("out"));
    c.format = j.value("format", std::string("csv"));
    c.create_out = j.value("create_out", true);
    if (c.format != "csv" && c.format != "jsonl" && c.format != "json")
        throw std::invalid_argument("config: format must be csv or json");
    return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config parse error in " + path + ": " + e.what());
    }
    return from_json(j);
}

json RunConfig::to_json() const {
    json m = {{"n", n}, {"theta", theta}, {"motif", motif}, {"encoding", encoding}};
    if (beta0) m["beta0"] = *beta0;
    if (!beta.empty()) m["beta"] = beta;
    json j = {
        {"command", command},
        {"model", m},
        {"sampler",
         {{"kind", sampler_name(sampler.kind)},
          {"burnin_sweeps", sampler.burnin_sweeps},
          {"thinning_sweeps", sampler.thinning_sweeps}}},
        {"seed", seed},
        {"threads", threads},
        {"out", out},
        {"format", format},
        {"create_out", create_out},
        {"replications", replications},
    };
    if (n_samples > 0) j["n_samples"] = n_samples;
    if (dump_graphs) j["dump_graphs"] = dump_graphs;
    json a;
    if (b) a["b"] = *b;
    if (t) a["t"] = *t;
    if (s) a["s"] = *s;
    if (A) a["A"] = *A;
    if (!a.is_null()) j["alternative"] = a;
    if (!cells.empty()) {
        json cj = json::array();
        for (auto& [bb, tt] : cells) cj.push_back(json::array({bb, tt}));
        j["cells"] = cj;
    }
    if (!n_list.empty()) j["n_list"] = n_list;
    if (!detectors.empty()) {
        json dj = json::array();
        for (auto& d : detectors) dj.push_back(detector_to_json(d));
        j["detectors"] = dj;
    }
    if (command == "oracle") {
        json o = {{"n", oracle_n}};
        if (oracle_s) o["s"] = *oracle_s;
        if (oracle_A) o["A"] = *oracle_A;
        j["oracle"] = o;
    }
    return j;
}

void ensure_out_dir(const std::string& path, bool create) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) {
        if (!fs::is_directory(path))
            throw std::invalid_argument("output path exists and is not a directory: " + path);
        return;
    }
    if (!create)
        throw std::invalid_argument("output directory does not exist (create_out=false): " + path);
    fs::create_directories(path);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json risk_report_to_json(const RiskReport& r) {
    return {
        {"type1", r.type1},
        {"type2", r.type2},
        {"risk", r.risk},
        {"se_type1", r.se_type1},
        {"se_type2", r.se_type2},
        {"se_risk", r.se_risk},
        {"replications_per_hypothesis", r.reps_per_hypothesis},
        {"n", r.n},
        {"theta", r.theta},
        {"beta0", r.beta0},
        {"s", r.s},
        {"A", r.A},
        {"detector", detector_name(r.detector)},
        {"threshold_mode", r.threshold_mode},
        {"threshold", r.threshold},
        {"sampler", sampler_name(r.sampler)},
        {"burnin_sweeps", r.burnin_sweeps},
        {"thinning_sweeps", r.thinning_sweeps},
        {"seed", r.master_seed},
    };
}

std::map<std::string, std::string> phase_csv_columns() {
    return {
        {"b", "signal size exponent, s = round(n^b)"},
        {"t", "signal strength exponent, A = n^t"},
        {"n", "number of vertices"},
        {"regime", "parameter regime of (theta, beta0)"},
        {"detector", "test statistic"},
        {"threshold_mode", "explicit | schedule | calibrated"},
        {"threshold", "resolved cutoff L_n"},
        {"s", "planted support size"},
        {"A", "planted signal strength"},
        {"theta", "dependence parameter"},
        {"beta0", "baseline vertex parameter"},
        {"type1", "fraction of null replications rejected"},
        {"type2", "fraction of alternative replications accepted"},
        {"risk", "type1 + type2"},
        {"se_type1", "Monte Carlo standard error of type1"},
        {"se_type2", "Monte Carlo standard error of type2"},
        {"se_risk", "Monte Carlo standard error of risk"},
        {"reps", "replications per hypothesis"},
        {"sampler", "chain used for the draws"},
        {"burnin_sweeps", "sweeps discarded before sampling"},
        {"thinning_sweeps", "sweeps between retained samples"},
        {"seed", "master seed of the run"},
        {"risk_delta_prev_n", "risk minus the previous-n risk of the same cell and detector"},
    };
}

std::map<std::string, std::string> sample_dump_columns() {
    return {
        {"index", "sample index in the stream"},
        {"sum_degrees", "sum of native-encoding degrees"},
        {"max_centered", "conditionally centered maximum degree statistic"},
        {"phi_bar", "mean auxiliary variable (empty unless the aux chain)"},
        {"graph_hex", "compact pair-bitmask form (present when dump_graphs)"},
    };
}

std::string phase_points_to_csv(const std::vector<PhasePoint>& pts) {
    std::ostringstream os;
    os.precision(12);
    os << "b,t,n,regime,detector,threshold_mode,threshold,s,A,theta,beta0,type1,type2,risk,"
          "se_type1,se_type2,se_risk,reps,sampler,burnin_sweeps,thinning_sweeps,seed,"
          "risk_delta_prev_n\n";
    for (const auto& p : pts) {
        const RiskReport& r = p.report;
        os << p.b << ',' << p.t << ',' << p.n << ',' << regime_name(p.regime) << ','
           << detector_name(r.detector) << ',' << r.threshold_mode << ',' << r.threshold << ','
           << r.s << ',' << r.A << ',' << r.theta << ',' << r.beta0 << ',' << r.type1 << ','
           << r.type2 << ',' << r.risk << ',' << r.se_type1 << ',' << r.se_type2 << ','
           << r.se_risk << ',' << r.reps_per_hypothesis << ','
           << (r.sampler == SamplerKind::Glauber ? "glauber"
               : r.sampler == SamplerKind::Aux   ? "aux"
                                                 : "exact")
           << ',' << r.burnin_sweeps << ',' << r.thinning_sweeps << ',' << r.master_seed << ','
           << p.risk_delta_prev_n << '\n';
    }
    return os.str();
}

json make_manifest(const RunConfig& cfg, const std::vector<std::string>& outputs) {
    json cols;
    if (cfg.command == "phase" || cfg.command == "risk") {
        for (auto& [k, v] : phase_csv_columns()) cols[k] = v;
    } else if (cfg.command == "sample") {
        for (auto& [k, v] : sample_dump_columns()) cols[k] = v;
    }
    json m = {{"tool", "dcergm"}, {"config", cfg.to_json()}, {"outputs", outputs}};
    if (!cols.is_null()) m["columns"] = cols;
    return m;
}

} // namespace dcergm
