// Command-line front end: sample | test | risk | phase | oracle.
// Exit codes: 0 success, 1 config error, 2 runtime failure, 3 acceptance-check failure.
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "dcergm/config.hpp"
#include "dcergm/parallel.hpp"
#include "dcergm/special.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dcergm;

namespace {

struct CliOverrides {
    std::string config_path;
    std::string graph_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

RunConfig load_config(const CliOverrides& ov, const std::string& expected_command) {
    RunConfig cfg = RunConfig::from_file(ov.config_path);
    if (cfg.command != expected_command)
        throw std::invalid_argument("config command is '" + cfg.command + "', expected '" +
                                    expected_command + "'");
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.out) cfg.out = *ov.out;
    if (ov.format) cfg.format = *ov.format;
    if (ov.threads) cfg.threads = *ov.threads;
    if (const char* env = std::getenv("DCERGM_THREADS")) cfg.threads = std::stoul(env);
    if (cfg.threads == 0) cfg.threads = default_threads();
    return cfg;
}

void write_manifest(const RunConfig& cfg, const std::vector<std::string>& outputs) {
    write_text_file(cfg.out + "/manifest.json", make_manifest(cfg, outputs).dump(2) + "\n");
}

double dump_beta0(const Model& m) { return m.constant_beta() ? m.beta[0] : 0.0; }

int cmd_sample(const CliOverrides& ov) {
    RunConfig cfg = load_config(ov, "sample");
    if (cfg.n_samples < 1) throw std::invalid_argument("sample: n_samples >= 1 required");
    Model m = cfg.build_model();
    ensure_out_dir(cfg.out, cfg.create_out);
    const double beta0 = dump_beta0(m);
    const bool csv = cfg.format == "csv";
    std::ostringstream os;
    os.precision(12);
    if (csv) os << "index,sum_degrees,max_centered,phi_bar,graph_hex\n";
    ChainOptions co{cfg.sampler.kind, cfg.sampler.burnin_sweeps, cfg.sampler.thinning_sweeps,
                    cfg.seed};
    run_chain(m, co, cfg.n_samples, [&](long idx, const Graph& g, const double* phi) {
        double sum_deg = 0.0;
        for (int i = 0; i < g.n(); ++i) sum_deg += g.degree(i);
        double mx = cond_centered_max(g, m.theta, beta0, m.motif);
        std::string phi_bar;
        if (phi) {
            double pb = 0.0;
            for (int i = 0; i < g.n(); ++i) pb += phi[i];
            std::ostringstream ps;
            ps.precision(12);
            ps << pb / g.n();
            phi_bar = ps.str();
        }
        if (csv) {
            os << idx << ',' << sum_deg << ',' << mx << ',' << phi_bar << ','
               << (cfg.dump_graphs ? g.to_hex() : "") << '\n';
        } else {
            json rec = {{"index", idx}, {"sum_degrees", sum_deg}, {"max_centered", mx}};
            if (phi) rec["phi_bar"] = std::stod(phi_bar);
            if (cfg.dump_graphs) rec["graph_hex"] = g.to_hex();
            os << rec.dump() << '\n';
        }
    });
    std::string file = cfg.out + (csv ? "/samples.csv" : "/samples.jsonl");
    write_text_file(file, os.str());
    write_manifest(cfg, {file});
    std::cout << "wrote " << file << "\n";
    return 0;
}

Graph load_graph_file(const std::string& path, Encoding enc) {
    std::string text = read_text_file(path);
    std::size_t pos = text.find_first_not_of(" \t\r\n");
    if (pos == std::string::npos) throw ParseError("line 1: empty graph file");
    std::size_t eol = text.find('\n', pos);
    std::string first = text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
    if (first.find(':') != std::string::npos) return Graph::parse_hex(first, enc);
    return Graph::parse_edge_list(text, enc);
}

int cmd_test(const CliOverrides& ov) {
    RunConfig cfg = load_config(ov, "test");
    if (ov.graph_path.empty()) throw std::invalid_argument("test: --graph FILE required");
    if (cfg.detectors.size() != 1)
        throw std::invalid_argument("test: exactly one detector required");
    Model null_model = cfg.build_null_model();
    Graph g = load_graph_file(ov.graph_path, null_model.encoding);
    if (g.n() != null_model.n)
        throw std::invalid_argument("test: graph has n=" + std::to_string(g.n()) +
                                    " but the model has n=" + std::to_string(null_model.n));
    const DetectorConfig& det = cfg.detectors[0];
    ChainOptions co{cfg.sampler.kind, cfg.sampler.burnin_sweeps, cfg.sampler.thinning_sweeps, 0};
    double ln = calibrate_threshold(det, null_model, co, cfg.threads, cfg.seed);
    double stat = detector_statistic(det.kind, g, null_model.theta, null_model.beta[0],
                                     null_model.motif);
    TestDecision dec = decide(stat, ln);
    json out = {{"kind", detector_name(det.kind)},
                {"n", null_model.n},
                {"theta", null_model.theta},
                {"beta0", null_model.beta[0]},
                {"threshold_mode", detector_to_json(det)["threshold"]["mode"]},
                {"L_n", dec.threshold},
                {"statistic", dec.statistic},
                {"decision", dec.reject ? "reject" : "accept"}};
    std::cout << out.dump(2) << "\n";
    ensure_out_dir(cfg.out, cfg.create_out);
    write_text_file(cfg.out + "/decision.json", out.dump(2) + "\n");
    write_manifest(cfg, {cfg.out + "/decision.json"});
    return 0;
}

int cmd_risk(const CliOverrides& ov) {
    RunConfig cfg = load_config(ov, "risk");
    if (cfg.detectors.empty()) throw std::invalid_argument("risk: at least one detector required");
    Model null_model = cfg.build_null_model();
    AlternativeSpec alt = cfg.build_alternative(null_model.n);
    auto reports = estimate_risk_multi(null_model, alt, cfg.detectors, cfg.sampler,
                                       cfg.replications, cfg.seed, cfg.threads);
    ensure_out_dir(cfg.out, cfg.create_out);
    json arr = json::array();
    std::vector<PhasePoint> rows;
    for (auto& r : reports) {
        arr.push_back(risk_report_to_json(r));
        PhasePoint pp;
        pp.b = cfg.b ? *cfg.b : std::log(static_cast<double>(r.s)) / std::log(static_cast<double>(r.n));
        pp.t = cfg.t ? *cfg.t : std::log(r.A) / std::log(static_cast<double>(r.n));
        pp.n = r.n;
        // theta = 0 is the independent beta-model; file it with Theta1
        pp.regime = r.theta > 0 ? classify_regime(r.theta, r.beta0) : Regime::Theta1;
        pp.report = r;
        rows.push_back(pp);
    }
    write_text_file(cfg.out + "/risk.json", arr.dump(2) + "\n");
    write_text_file(cfg.out + "/risk.csv", phase_points_to_csv(rows));
    write_manifest(cfg, {cfg.out + "/risk.json", cfg.out + "/risk.csv"});
    std::cout << arr.dump(2) << "\n";
    return 0;
}

int cmd_phase(const CliOverrides& ov) {
    RunConfig cfg = load_config(ov, "phase");
    if (cfg.cells.empty() || cfg.n_list.empty() || cfg.detectors.empty())
        throw std::invalid_argument("phase: cells, n_list and detectors are required");
    PhaseGridConfig pg;
    pg.cells = cfg.cells;
    pg.n_list = cfg.n_list;
    pg.theta = cfg.theta;
    pg.beta0 = cfg.beta0.value_or(0.0);
    pg.detectors = cfg.detectors;
    pg.reps = cfg.replications;
    pg.sampler = cfg.sampler;
    pg.seed = cfg.seed;
    pg.threads = cfg.threads;
    auto pts = phase_diagram(pg);
    ensure_out_dir(cfg.out, cfg.create_out);
    write_text_file(cfg.out + "/phase.csv", phase_points_to_csv(pts));
    json arr = json::array();
    for (auto& p : pts) {
        json row = risk_report_to_json(p.report);
        row["b"] = p.b;
        row["t"] = p.t;
        row["regime"] = regime_name(p.regime);
        row["risk_delta_prev_n"] = p.risk_delta_prev_n;
        arr.push_back(row);
    }
    write_text_file(cfg.out + "/phase.json", arr.dump(2) + "\n");
    write_manifest(cfg, {cfg.out + "/phase.csv", cfg.out + "/phase.json"});
    std::cout << "wrote " << pts.size() << " phase points to " << cfg.out << "/phase.csv\n";
    return 0;
}

int cmd_oracle(const CliOverrides& ov) {
    RunConfig cfg = load_config(ov, "oracle");
    const int n = cfg.oracle_n;
    const double theta = cfg.theta;
    const double beta0 = cfg.beta0.value_or(0.0);
    const int s = cfg.oracle_s.value_or(1);
    const double A = cfg.oracle_A.value_or(0.2);

    json checks = json::array();
    bool all_pass = true;
    auto push = [&](const std::string& name, bool pass, json detail) {
        detail["check"] = name;
        detail["pass"] = pass;
        checks.push_back(detail);
        all_pass = all_pass && pass;
    };

    ExactDistribution d = exact_distribution(Model::two_star_pm(n, theta, beta0));
    double psum = 0.0;
    for (double p : d.probs) psum += p;
    push("distribution_normalized", std::fabs(psum - 1.0) < 1e-12,
         {{"sum", psum}, {"tolerance", 1e-12}, {"n", n}, {"theta", theta}, {"beta0", beta0}});

    // beta-model factorization at theta = 0 in ZeroOne encoding
    {
        std::vector<double> beta(n);
        for (int i = 0; i < n; ++i) beta[i] = beta0 + 0.1 * i;
        ExactDistribution d0 = exact_distribution(
            Model(n, 0.0, beta, SubgraphSpec::two_star(), Encoding::ZeroOne));
        ExactMoments mo = exact_moments(d0);
        auto pairs = all_pairs(n);
        double worst_marginal = 0.0, worst_cov = 0.0;
        const std::size_t m = pairs.size();
        for (std::size_t e = 0; e < m; ++e) {
            double want = psi(beta[pairs[e].first] + beta[pairs[e].second]);
            worst_marginal = std::max(worst_marginal, std::fabs(mo.edge_marginal[e] - want));
            for (std::size_t f = 0; f < m; ++f)
                if (e != f) worst_cov = std::max(worst_cov, std::fabs(mo.edge_cov_at(m, e, f)));
        }
        push("theta0_factorization", worst_marginal < 1e-12 && worst_cov < 1e-12,
             {{"max_marginal_error", worst_marginal},
              {"max_edge_cov", worst_cov},
              {"tolerance", 1e-12}});
    }

    {
        LrSecondMoment lr = lr_second_moment(n, std::min(s, n), A, theta, beta0);
        double gap = std::fabs(lr.direct - lr.partition_route) / std::max(1.0, lr.direct);
        push("lr_second_moment_dual_path", gap < 1e-10 && lr.direct >= 1.0 - 1e-12,
             {{"direct", lr.direct}, {"partition_route", lr.partition_route},
              {"relative_gap", gap}, {"tolerance", 1e-10}});
    }

    if (n > 2 * s) {
        LbBoundCheck lb = lb_bound_check(n, s, A, theta, beta0);
        push("lb_bound_holds", lb.holds,
             {{"lhs", lb.lhs}, {"rhs", lb.rhs}, {"cov_k1k2", lb.cov_k1k2}, {"var_k1", lb.var_k1}});
    }

    if (theta > 0.5) {
        RestrictionEvent u = RestrictionEvent::canonical_u(n, theta);
        ExactDistribution dr = exact_distribution(Model::two_star_pm(n, theta, beta0), &u);
        double rsum = 0.0;
        for (double p : dr.probs) rsum += p;
        push("restricted_renormalizes", std::fabs(rsum - 1.0) < 1e-12,
             {{"sum", rsum}, {"event", u.name}});
    }

    json report = {{"model", {{"n", n}, {"theta", theta}, {"beta0", beta0}, {"s", s}, {"A", A}}},
                   {"checks", checks},
                   {"all_pass", all_pass}};
    ensure_out_dir(cfg.out, cfg.create_out);
    write_text_file(cfg.out + "/oracle.json", report.dump(2) + "\n");
    write_manifest(cfg, {cfg.out + "/oracle.json"});
    std::cout << report.dump(2) << "\n";
    return all_pass ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"degree-corrected ERGM simulation and testing toolkit"};
    app.require_subcommand(1);

    CliOverrides ov;
    auto add_common = [&](CLI::App* sub, bool with_graph = false) {
        sub->add_option("--config", ov.config_path, "JSON run configuration")->required();
        sub->add_option("--seed", ov.seed, "master seed (overrides the config)");
        sub->add_option("--threads", ov.threads,
                        "worker threads (DCERGM_THREADS overrides this flag)");
        sub->add_option("--out", ov.out, "output directory");
        sub->add_option("--format", ov.format, "csv or json");
        if (with_graph) sub->add_option("--graph", ov.graph_path, "input graph file")->required();
    };
    CLI::App* sample = app.add_subcommand("sample", "draw samples and write a dump");
    CLI::App* test = app.add_subcommand("test", "run one detector on a graph file");
    CLI::App* risk = app.add_subcommand("risk", "estimate testing risk for one alternative");
    CLI::App* phase = app.add_subcommand("phase", "risk sweep over a (b,t) grid");
    CLI::App* oracle = app.add_subcommand("oracle", "exact small-n ground-truth checks");
    add_common(sample);
    add_common(test, true);
    add_common(risk);
    add_common(phase);
    add_common(oracle);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed()) return cmd_sample(ov);
        if (test->parsed()) return cmd_test(ov);
        if (risk->parsed()) return cmd_risk(ov);
        if (phase->parsed()) return cmd_phase(ov);
        if (oracle->parsed()) return cmd_oracle(ov);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
