#pragma once
#include <string>

#include "dcergm/model.hpp"
#include "dcergm/sampler.hpp"

namespace dcergm {

enum class DetectorKind { CondCenteredSum, CondCenteredMax, TotalDegree };

const char* detector_name(DetectorKind k);
DetectorKind detector_from_name(const std::string& name);

// Threshold rule for a detector: a fixed L_n, the power schedule L_n = c n^gamma,
// or the empirical (1-alpha) null quantile over M replications.
struct ThresholdSpec {
    enum class Mode { Explicit, Schedule, Calibrated };
    Mode mode = Mode::Explicit;
    double value = 0.0;       // Explicit
    double c = 1.0;           // Schedule
    double gamma = 1.0;       // Schedule
    double alpha = 0.05;      // Calibrated
    int replications = 1000;  // Calibrated

    void validate() const;
    static ThresholdSpec explicit_value(double v);
    static ThresholdSpec schedule(double c, double gamma);
    static ThresholdSpec calibrated(double alpha, int replications);
};

struct DetectorConfig {
    DetectorKind kind = DetectorKind::CondCenteredSum;
    ThresholdSpec threshold;
};

struct TestDecision {
    double statistic = 0.0;
    double threshold = 0.0;
    bool reject = false; // statistic > threshold, strict
};

// sum_e [ G_e - E_{H0}(G_e | rest) ], null centering at beta = beta0 1.
double cond_centered_sum(const Graph& g, double theta, double beta0, const SubgraphSpec& motif);
// max_i sum_{e owns i} [ G_e - E_{H0}(G_e | rest) ].
double cond_centered_max(const Graph& g, double theta, double beta0, const SubgraphSpec& motif);
// sum_i k_i = 2 * (signed edge sum); ZeroOne graphs give sum_i d_i.
double total_degree(const Graph& g);

double detector_statistic(DetectorKind k, const Graph& g, double theta, double beta0,
                          const SubgraphSpec& motif);

// Resolve a threshold: schedules evaluate c*n^gamma, calibration runs M
// independent null chains and takes the ceil((1-alpha)M) order statistic.
double calibrate_threshold(const DetectorConfig& cfg, const Model& null_model,
                           const ChainOptions& sampler, unsigned threads, std::uint64_t seed);

TestDecision decide(double statistic, double threshold);

} // namespace dcergm
