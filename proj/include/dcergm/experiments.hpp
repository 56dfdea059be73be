#pragma once
#include <string>
#include <vector>

#include "dcergm/detectors.hpp"

namespace dcergm {

struct SamplerOptions {
    SamplerKind kind = SamplerKind::Aux;
    long burnin_sweeps = -1; // -1: default by criticality
    long thinning_sweeps = 1;
};

// Estimated type I + worst-case type II risk for one detector. The worst
// case over the sparse elevated-degree class is evaluated at its symmetric
// configuration (signal A on a fixed support of size s).
struct RiskReport {
    double type1 = 0.0;
    double type2 = 0.0;
    double risk = 0.0;
    double se_type1 = 0.0;
    double se_type2 = 0.0;
    double se_risk = 0.0;
    int reps_per_hypothesis = 0;

    // provenance
    int n = 0;
    double theta = 0.0;
    double beta0 = 0.0;
    int s = 0;
    double A = 0.0;
    DetectorKind detector = DetectorKind::CondCenteredSum;
    std::string threshold_mode;
    double threshold = 0.0;
    SamplerKind sampler = SamplerKind::Aux;
    long burnin_sweeps = 0;
    long thinning_sweeps = 1;
    std::uint64_t master_seed = 0;
};

RiskReport estimate_risk(const Model& null_model, const AlternativeSpec& alt,
                         const DetectorConfig& det, const SamplerOptions& so, int reps,
                         std::uint64_t seed, unsigned threads);

// One cell sampled once, all detectors evaluated on the shared draws.
std::vector<RiskReport> estimate_risk_multi(const Model& null_model, const AlternativeSpec& alt,
                                            const std::vector<DetectorConfig>& dets,
                                            const SamplerOptions& so, int reps,
                                            std::uint64_t seed, unsigned threads);

struct PhasePoint {
    double b = 0.0;
    double t = 0.0;
    int n = 0;
    Regime regime = Regime::Theta1;
    RiskReport report;
    double risk_delta_prev_n = 0.0; // risk minus the previous-n risk of the same cell/detector
};

struct PhaseGridConfig {
    std::vector<std::pair<double, double>> cells; // (b, t) pairs
    std::vector<int> n_list;
    double theta = 0.3;
    double beta0 = 0.0;
    std::vector<DetectorConfig> detectors;
    int reps = 500;
    SamplerOptions sampler;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

// Sorted by (b, t, detector, n); null draws are shared between cells with the
// same n, and alternative draws between detectors of the same cell.
std::vector<PhasePoint> phase_diagram(const PhaseGridConfig& cfg);

// --- scaling studies -------------------------------------------------------

enum class BetaMode { Zero, Box }; // Box: beta_i = n^{-1/2} uniformly

struct ScalingOptions {
    int chains = 8;
    int samples_per_chain = 64;
    long thinning_sweeps = 2;
    long burnin_sweeps = -1;
    bool conditional_on_u = false;
    SamplerKind kind = SamplerKind::Aux; // degree-only studies may pick glauber
    unsigned threads = 1;
};

// Fitted slope of log E|phi_i - phi_bar|^ell (or log E(|phi_i - t|^ell | U)
// in the conditional variant) against log n.
struct MomentScalingResult {
    std::vector<int> n_list;
    std::vector<double> log_moment;
    double slope = 0.0;
    double slope_se = 0.0;
    double tolerance = 0.15;
    bool pass = false; // slope <= -ell/2 + tolerance
};
MomentScalingResult moment_scaling(double theta, BetaMode beta_mode, int ell,
                                   const std::vector<int>& n_list, const ScalingOptions& opt,
                                   std::uint64_t seed);

struct CorrelationScalingResult {
    std::vector<int> n_list;
    std::vector<double> cov_k1k2;
    std::vector<double> cov_se;
    std::vector<double> var_k1;
    std::string verdict; // "bounded" or "linear" or "inconclusive"
};
CorrelationScalingResult correlation_scaling(double theta, double beta0,
                                             const std::vector<int>& n_list,
                                             const ScalingOptions& opt, std::uint64_t seed);

// Null-model fluctuations at the critical point (1/2, 0): empirical quantile
// tables of n^{1/4} phi_bar and n^{-3/2} sum_{i<j} Y_ij, their consecutive-n
// Kolmogorov distances, and reference quantiles of the quartic density
// proportional to exp(-z^4/12 - z^2/24).
struct CriticalFluctuationResult {
    std::vector<int> n_list;
    std::vector<double> quantile_probs;
    std::vector<std::vector<double>> phibar_quantiles;   // per n
    std::vector<std::vector<double>> edge_sum_quantiles; // per n
    std::vector<double> phibar_kolmogorov;               // consecutive n pairs
    std::vector<double> phibar_medians;
    std::vector<double> phibar_median_se;
    std::vector<double> zeta_reference_quantiles;
};
CriticalFluctuationResult critical_fluctuation(const std::vector<int>& n_list,
                                               const ScalingOptions& opt, std::uint64_t seed);

// Fraction of replicates with tanh(phi_bar) <= n^{-1/4} under the planted
// alternative at the critical point, per n.
struct AltMeanShiftResult {
    std::vector<int> n_list;
    std::vector<double> fraction_below;
    bool decreasing = false;
};
AltMeanShiftResult alt_mean_shift_at_criticality(double b, double t, const std::vector<int>& n_list,
                                                 const ScalingOptions& opt, std::uint64_t seed);

// Concentration envelope for the conditionally centered sum: fit a single
// lambda at fit_n so that the empirical null tail satisfies
// P(|S| > x) <= 2 exp(-x^2/(lambda C(n,2))) at the probed quantile levels,
// then check the envelope (with 10% slack on lambda) at the other sizes.
struct EnvelopeCheck {
    int n = 0;
    int probes = 0;
    int violations = 0;
};
struct ConcentrationEnvelopeResult {
    double lambda_hat = 0.0;
    std::vector<EnvelopeCheck> checks;
    double violation_fraction = 0.0;
    bool pass = false; // violation_fraction <= 0.10
};
ConcentrationEnvelopeResult concentration_envelope(double theta, double beta0, int fit_n,
                                                   const std::vector<int>& check_ns, int reps,
                                                   const std::vector<double>& probe_levels,
                                                   const SamplerOptions& so, std::uint64_t seed,
                                                   unsigned threads);

// Quantiles of the density proportional to exp(-z^4/12 - z^2/24) by quadrature.
std::vector<double> zeta_density_quantiles(const std::vector<double>& probs);

} // namespace dcergm
