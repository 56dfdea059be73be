#include "dcergm/detectors.hpp"

#include <algorithm>
#include <cmath>

#include "dcergm/parallel.hpp"
#include "dcergm/special.hpp"

namespace dcergm {

const char* detector_name(DetectorKind k) {
    switch (k) {
        case DetectorKind::CondCenteredSum: return "cond_centered_sum";
        case DetectorKind::CondCenteredMax: return "cond_centered_max";
        default: return "total_degree";
    }
}

DetectorKind detector_from_name(const std::string& name) {
    if (name == "cond_centered_sum") return DetectorKind::CondCenteredSum;
    if (name == "cond_centered_max") return DetectorKind::CondCenteredMax;
    if (name == "total_degree") return DetectorKind::TotalDegree;
    throw std::invalid_argument("unknown detector kind: " + name);
}

void ThresholdSpec::validate() const {
    if (mode == Mode::Schedule && !(c > 0.0))
        throw std::invalid_argument("threshold schedule: c > 0 required");
    if (mode == Mode::Calibrated) {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("threshold calibration: alpha in (0,1)");
        if (replications < 100)
            throw std::invalid_argument("threshold calibration: at least 100 replications");
    }
}

ThresholdSpec ThresholdSpec::explicit_value(double v) {
    ThresholdSpec t;
    t.mode = Mode::Explicit;
    t.value = v;
    return t;
}

ThresholdSpec ThresholdSpec::schedule(double c, double gamma) {
    ThresholdSpec t;
    t.mode = Mode::Schedule;
    t.c = c;
    t.gamma = gamma;
    t.validate();
    return t;
}

ThresholdSpec ThresholdSpec::calibrated(double alpha, int replications) {
    ThresholdSpec t;
    t.mode = Mode::Calibrated;
    t.alpha = alpha;
    t.replications = replications;
    t.validate();
    return t;
}

namespace {

// Per-edge conditionally centered residuals accumulated into per-vertex sums.
// into[v] += G_e - E_{H0}(G_e | rest) for each e owning v; returns the total.
double accumulate_centered(const Graph& g, double theta, double beta0,
                           const SubgraphSpec& motif, std::vector<double>* per_vertex) {
    const int n = g.n();
    double total = 0.0;
    auto add = [&](int i, int j, double r) {
        total += r;
        if (per_vertex) {
            (*per_vertex)[i] += r;
            (*per_vertex)[j] += r;
        }
    };
    if (g.encoding() == Encoding::PlusMinus) {
        if (!motif.is_two_star())
            throw std::invalid_argument("centered statistics: PlusMinus requires the two-star motif");
        std::vector<double> a(n);
        std::vector<int> k = g.degrees();
        for (int i = 0; i < n; ++i) a[i] = theta * k[i] / (n - 1);
        const double shift = 2.0 * theta / (n - 1);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                int y = g.edge_value(i, j);
                double r = y - std::tanh(a[i] + a[j] - shift * y + beta0);
                add(i, j, r);
            }
        return total;
    }
    if (motif.is_edge()) {
        const double mean = psi(2.0 * theta + 2.0 * beta0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) add(i, j, g.edge_value(i, j) - mean);
        return total;
    }
    if (motif.is_two_star()) {
        std::vector<int> d = g.degrees();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                int extra = g.has_edge(i, j) ? 0 : 1;
                double te = 2.0 * (d[i] + d[j] + 2 * extra - 2) / static_cast<double>(n);
                add(i, j, g.edge_value(i, j) - psi(theta * te + 2.0 * beta0));
            }
        return total;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double te = count_through_edge_scaled(motif, g, i, j);
            add(i, j, g.edge_value(i, j) - psi(theta * te + 2.0 * beta0));
        }
    return total;
}

} // namespace

double cond_centered_sum(const Graph& g, double theta, double beta0, const SubgraphSpec& motif) {
    return accumulate_centered(g, theta, beta0, motif, nullptr);
}

double cond_centered_max(const Graph& g, double theta, double beta0, const SubgraphSpec& motif) {
    std::vector<double> per_vertex(g.n(), 0.0);
    accumulate_centered(g, theta, beta0, motif, &per_vertex);
    return *std::max_element(per_vertex.begin(), per_vertex.end());
}

double total_degree(const Graph& g) {
    long long s = 0;
    for (int i = 0; i < g.n(); ++i) s += g.degree(i);
    return static_cast<double>(s);
}

double detector_statistic(DetectorKind k, const Graph& g, double theta, double beta0,
                          const SubgraphSpec& motif) {
    switch (k) {
        case DetectorKind::CondCenteredSum: return cond_centered_sum(g, theta, beta0, motif);
        case DetectorKind::CondCenteredMax: return cond_centered_max(g, theta, beta0, motif);
        default: return total_degree(g);
    }
}

double calibrate_threshold(const DetectorConfig& cfg, const Model& null_model,
                           const ChainOptions& sampler, unsigned threads, std::uint64_t seed) {
    cfg.threshold.validate();
    switch (cfg.threshold.mode) {
        case ThresholdSpec::Mode::Explicit:
            return cfg.threshold.value;
        case ThresholdSpec::Mode::Schedule:
            return cfg.threshold.c * std::pow(static_cast<double>(null_model.n), cfg.threshold.gamma);
        case ThresholdSpec::Mode::Calibrated:
            break;
    }
    if (!null_model.constant_beta())
        throw std::invalid_argument("calibrate_threshold: null model must have constant beta");
    const int reps = cfg.threshold.replications;
    const double beta0 = null_model.beta[0];
    std::vector<double> stats(reps);
    parallel_for(reps, threads, [&](std::size_t r) {
        ChainOptions co = sampler;
        co.seed = derive_seed(seed, {0xCA11B8ull, r});
        run_chain(null_model, co, 1, [&](long, const Graph& g, const double*) {
            stats[r] = detector_statistic(cfg.kind, g, null_model.theta, beta0, null_model.motif);
        });
    });
    std::sort(stats.begin(), stats.end());
    std::size_t k = static_cast<std::size_t>(std::ceil((1.0 - cfg.threshold.alpha) * reps));
    if (k == 0) k = 1;
    return stats[k - 1];
}

TestDecision decide(double statistic, double threshold) {
    if (!std::isfinite(statistic) || !std::isfinite(threshold))
        throw std::invalid_argument("decide: finite inputs required");
    return {statistic, threshold, statistic > threshold};
}

} // namespace dcergm
