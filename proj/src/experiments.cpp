#include "dcergm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "dcergm/parallel.hpp"
#include "dcergm/special.hpp"

namespace dcergm {

namespace {

double binom_se(double p, int n) { return std::sqrt(std::max(p * (1.0 - p), 0.0) / n); }

long resolve_burnin(const Model& null_model, const SamplerOptions& so) {
    return so.burnin_sweeps >= 0 ? so.burnin_sweeps : default_burnin_sweeps(null_model);
}

// One independent chain per replication; stats[r][d] is detector d's statistic
// on replication r. Centering always uses the null (theta, beta0).
std::vector<std::vector<double>> replicate_stats(const Model& sample_model,
                                                 const std::vector<DetectorKind>& kinds,
                                                 double theta, double beta0,
                                                 const SubgraphSpec& motif,
                                                 const SamplerOptions& so, long burnin, int reps,
                                                 std::uint64_t seed, std::uint64_t tag,
                                                 unsigned threads) {
    std::vector<std::vector<double>> stats(reps, std::vector<double>(kinds.size(), 0.0));
    parallel_for(reps, threads, [&](std::size_t r) {
        ChainOptions co{so.kind, burnin, so.thinning_sweeps, derive_seed(seed, {tag, r})};
        run_chain(sample_model, co, 1, [&](long, const Graph& g, const double*) {
            for (std::size_t d = 0; d < kinds.size(); ++d)
                stats[r][d] = detector_statistic(kinds[d], g, theta, beta0, motif);
        });
    });
    return stats;
}

std::string threshold_mode_name(const ThresholdSpec& t) {
    switch (t.mode) {
        case ThresholdSpec::Mode::Explicit: return "explicit";
        case ThresholdSpec::Mode::Schedule: return "schedule";
        default: return "calibrated";
    }
}

struct SlopeFit {
    double slope = 0.0;
    double se = 0.0;
};

SlopeFit fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t k = x.size();
    double xb = std::accumulate(x.begin(), x.end(), 0.0) / k;
    double yb = std::accumulate(y.begin(), y.end(), 0.0) / k;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (x[i] - xb) * (x[i] - xb);
        sxy += (x[i] - xb) * (y[i] - yb);
    }
    SlopeFit f;
    f.slope = sxy / sxx;
    if (k > 2) {
        double ss = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            double r = y[i] - yb - f.slope * (x[i] - xb);
            ss += r * r;
        }
        f.se = std::sqrt(ss / (k - 2) / sxx);
    }
    return f;
}

} // namespace

std::vector<RiskReport> estimate_risk_multi(const Model& null_model, const AlternativeSpec& alt,
                                            const std::vector<DetectorConfig>& dets,
                                            const SamplerOptions& so, int reps,
                                            std::uint64_t seed, unsigned threads) {
    if (reps < 100) throw std::invalid_argument("estimate_risk: at least 100 replications");
    if (!null_model.constant_beta())
        throw std::invalid_argument("estimate_risk: null model must have constant beta");
    if (alt.beta0 != null_model.beta[0])
        throw std::invalid_argument("estimate_risk: alternative baseline differs from the null");
    const double theta = null_model.theta;
    const double beta0 = null_model.beta[0];
    const long burnin = resolve_burnin(null_model, so);

    Model alt_model(null_model.n, theta, make_beta(alt, null_model.n), null_model.motif,
                    null_model.encoding);

    std::vector<DetectorKind> kinds;
    for (auto& d : dets) kinds.push_back(d.kind);

    // thresholds; calibrated detectors share one set of calibration draws
    int m_cal = 0;
    for (auto& d : dets) {
        d.threshold.validate();
        if (d.threshold.mode == ThresholdSpec::Mode::Calibrated)
            m_cal = std::max(m_cal, d.threshold.replications);
    }
    std::vector<std::vector<double>> cal_stats;
    if (m_cal > 0)
        cal_stats = replicate_stats(null_model, kinds, theta, beta0, null_model.motif, so, burnin,
                                    m_cal, seed, 0xCA11B8ull, threads);
    std::vector<double> thresholds(dets.size());
    for (std::size_t d = 0; d < dets.size(); ++d) {
        const ThresholdSpec& t = dets[d].threshold;
        if (t.mode == ThresholdSpec::Mode::Explicit) {
            thresholds[d] = t.value;
        } else if (t.mode == ThresholdSpec::Mode::Schedule) {
            thresholds[d] = t.c * std::pow(static_cast<double>(null_model.n), t.gamma);
        } else {
            std::vector<double> xs(t.replications);
            for (int r = 0; r < t.replications; ++r) xs[r] = cal_stats[r][d];
            std::sort(xs.begin(), xs.end());
            std::size_t k = static_cast<std::size_t>(std::ceil((1.0 - t.alpha) * t.replications));
            thresholds[d] = xs[std::max<std::size_t>(k, 1) - 1];
        }
    }

    auto null_stats = replicate_stats(null_model, kinds, theta, beta0, null_model.motif, so, burnin,
                                      reps, seed, 0x0ull, threads);
    auto alt_stats = replicate_stats(alt_model, kinds, theta, beta0, null_model.motif, so, burnin,
                                     reps, seed, 0x1ull, threads);

    std::vector<RiskReport> out(dets.size());
    for (std::size_t d = 0; d < dets.size(); ++d) {
        int rejects = 0, accepts = 0;
        for (int r = 0; r < reps; ++r) {
            if (null_stats[r][d] > thresholds[d]) ++rejects;
            if (!(alt_stats[r][d] > thresholds[d])) ++accepts;
        }
        RiskReport& rr = out[d];
        rr.type1 = static_cast<double>(rejects) / reps;
        rr.type2 = static_cast<double>(accepts) / reps;
        rr.risk = rr.type1 + rr.type2;
        rr.se_type1 = binom_se(rr.type1, reps);
        rr.se_type2 = binom_se(rr.type2, reps);
        rr.se_risk = std::hypot(rr.se_type1, rr.se_type2);
        rr.reps_per_hypothesis = reps;
        rr.n = null_model.n;
        rr.theta = theta;
        rr.beta0 = beta0;
        rr.s = alt.s;
        rr.A = alt.A;
        rr.detector = dets[d].kind;
        rr.threshold_mode = threshold_mode_name(dets[d].threshold);
        rr.threshold = thresholds[d];
        rr.sampler = so.kind;
        rr.burnin_sweeps = burnin;
        rr.thinning_sweeps = so.thinning_sweeps;
        rr.master_seed = seed;
    }
    return out;
}

RiskReport estimate_risk(const Model& null_model, const AlternativeSpec& alt,
                         const DetectorConfig& det, const SamplerOptions& so, int reps,
                         std::uint64_t seed, unsigned threads) {
    return estimate_risk_multi(null_model, alt, {det}, so, reps, seed, threads)[0];
}

std::vector<PhasePoint> phase_diagram(const PhaseGridConfig& cfg) {
    if (cfg.cells.empty() || cfg.n_list.empty() || cfg.detectors.empty())
        throw std::invalid_argument("phase_diagram: empty grid");
    Regime regime = classify_regime(cfg.theta, cfg.beta0);

    // points[cell][det][ni]
    std::vector<std::vector<std::vector<PhasePoint>>> points(
        cfg.cells.size(),
        std::vector<std::vector<PhasePoint>>(cfg.detectors.size(),
                                             std::vector<PhasePoint>(cfg.n_list.size())));

    std::vector<DetectorKind> kinds;
    for (auto& d : cfg.detectors) kinds.push_back(d.kind);

    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
        const int n = cfg.n_list[ni];
        Model null_model = Model::two_star_pm(n, cfg.theta, cfg.beta0);
        const long burnin = resolve_burnin(null_model, cfg.sampler);

        int m_cal = 0;
        for (auto& d : cfg.detectors)
            if (d.threshold.mode == ThresholdSpec::Mode::Calibrated)
                m_cal = std::max(m_cal, d.threshold.replications);
        std::vector<std::vector<double>> cal_stats;
        if (m_cal > 0)
            cal_stats = replicate_stats(null_model, kinds, cfg.theta, cfg.beta0, null_model.motif,
                                        cfg.sampler, burnin, m_cal, cfg.seed,
                                        derive_seed(0xCA11B8ull, {static_cast<std::uint64_t>(n)}),
                                        cfg.threads);
        std::vector<double> thresholds(cfg.detectors.size());
        for (std::size_t d = 0; d < cfg.detectors.size(); ++d) {
            const ThresholdSpec& t = cfg.detectors[d].threshold;
            if (t.mode == ThresholdSpec::Mode::Explicit) {
                thresholds[d] = t.value;
            } else if (t.mode == ThresholdSpec::Mode::Schedule) {
                thresholds[d] = t.c * std::pow(static_cast<double>(n), t.gamma);
            } else {
                std::vector<double> xs(t.replications);
                for (int r = 0; r < t.replications; ++r) xs[r] = cal_stats[r][d];
                std::sort(xs.begin(), xs.end());
                std::size_t k = static_cast<std::size_t>(std::ceil((1.0 - t.alpha) * t.replications));
                thresholds[d] = xs[std::max<std::size_t>(k, 1) - 1];
            }
        }

        auto null_stats = replicate_stats(null_model, kinds, cfg.theta, cfg.beta0, null_model.motif,
                                          cfg.sampler, burnin, cfg.reps, cfg.seed,
                                          derive_seed(0x0ull, {static_cast<std::uint64_t>(n)}),
                                          cfg.threads);

        for (std::size_t ci = 0; ci < cfg.cells.size(); ++ci) {
            auto [b, t] = cfg.cells[ci];
            int s = signal_count_from_exponent(n, b);
            double A = signal_strength_from_exponent(n, t);
            AlternativeSpec alt(cfg.beta0, s, A);
            Model alt_model = Model::two_star_pm(n, cfg.theta, make_beta(alt, n));
            auto alt_stats = replicate_stats(alt_model, kinds, cfg.theta, cfg.beta0,
                                             null_model.motif, cfg.sampler, burnin, cfg.reps,
                                             cfg.seed,
                                             derive_seed(0x1ull, {static_cast<std::uint64_t>(n), ci}),
                                             cfg.threads);
            for (std::size_t d = 0; d < cfg.detectors.size(); ++d) {
                int rejects = 0, accepts = 0;
                for (int r = 0; r < cfg.reps; ++r) {
                    if (null_stats[r][d] > thresholds[d]) ++rejects;
                    if (!(alt_stats[r][d] > thresholds[d])) ++accepts;
                }
                PhasePoint& pp = points[ci][d][ni];
                pp.b = b;
                pp.t = t;
                pp.n = n;
                pp.regime = regime;
                RiskReport& rr = pp.report;
                rr.type1 = static_cast<double>(rejects) / cfg.reps;
                rr.type2 = static_cast<double>(accepts) / cfg.reps;
                rr.risk = rr.type1 + rr.type2;
                rr.se_type1 = binom_se(rr.type1, cfg.reps);
                rr.se_type2 = binom_se(rr.type2, cfg.reps);
                rr.se_risk = std::hypot(rr.se_type1, rr.se_type2);
                rr.reps_per_hypothesis = cfg.reps;
                rr.n = n;
                rr.theta = cfg.theta;
                rr.beta0 = cfg.beta0;
                rr.s = s;
                rr.A = A;
                rr.detector = cfg.detectors[d].kind;
                rr.threshold_mode = threshold_mode_name(cfg.detectors[d].threshold);
                rr.threshold = thresholds[d];
                rr.sampler = cfg.sampler.kind;
                rr.burnin_sweeps = burnin;
                rr.thinning_sweeps = cfg.sampler.thinning_sweeps;
                rr.master_seed = cfg.seed;
            }
        }
    }

    std::vector<PhasePoint> out;
    for (std::size_t ci = 0; ci < cfg.cells.size(); ++ci)
        for (std::size_t d = 0; d < cfg.detectors.size(); ++d)
            for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
                PhasePoint pp = points[ci][d][ni];
                pp.risk_delta_prev_n =
                    ni == 0 ? 0.0 : pp.report.risk - points[ci][d][ni - 1].report.risk;
                out.push_back(std::move(pp));
            }
    return out;
}

// --- scaling studies -------------------------------------------------------

namespace {

struct AuxHarvest {
    std::vector<double> values;  // one value per retained sample
    long retained = 0;
    long drawn = 0;
};

// Runs `chains` independent aux chains and evaluates `eval` on each retained
// sample (optionally only those inside U). eval(state, phi) -> value.
AuxHarvest harvest_aux(const Model& m, const ScalingOptions& opt, std::uint64_t seed,
                       const RestrictionEvent* u,
                       const std::function<double(const Graph&, const double*)>& eval) {
    AuxHarvest h;
    std::vector<std::vector<double>> per_chain(opt.chains);
    std::vector<long> drawn(opt.chains, 0);
    parallel_for(opt.chains, opt.threads, [&](std::size_t c) {
        ChainOptions co{SamplerKind::Aux, opt.burnin_sweeps, opt.thinning_sweeps,
                        derive_seed(seed, {0xAAull, c})};
        run_chain(m, co, opt.samples_per_chain, [&](long, const Graph& g, const double* phi) {
            ++drawn[c];
            if (u && !u->contains(g)) return;
            per_chain[c].push_back(eval(g, phi));
        });
    });
    for (int c = 0; c < opt.chains; ++c) {
        h.drawn += drawn[c];
        h.retained += static_cast<long>(per_chain[c].size());
        h.values.insert(h.values.end(), per_chain[c].begin(), per_chain[c].end());
    }
    return h;
}

} // namespace

MomentScalingResult moment_scaling(double theta, BetaMode beta_mode, int ell,
                                   const std::vector<int>& n_list, const ScalingOptions& opt,
                                   std::uint64_t seed) {
    if (ell < 1) throw std::invalid_argument("moment_scaling: ell >= 1");
    if (n_list.size() < 2) throw std::invalid_argument("moment_scaling: need at least two sizes");
    if (opt.conditional_on_u && !(theta > 0.5))
        throw std::invalid_argument("moment_scaling: conditional version requires theta > 1/2");

    MomentScalingResult res;
    res.n_list = n_list;
    for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
        const int n = n_list[idx];
        double b0 = beta_mode == BetaMode::Zero ? 0.0 : std::pow(n, -0.5);
        Model m = Model::two_star_pm(n, theta, b0);
        std::optional<RestrictionEvent> u;
        double center_t = 0.0;
        if (opt.conditional_on_u) {
            u = RestrictionEvent::canonical_u(n, theta);
            center_t = find_t(theta);
        }
        auto eval = [&](const Graph&, const double* phi) {
            double acc = 0.0;
            if (opt.conditional_on_u) {
                for (int i = 0; i < n; ++i) acc += std::pow(std::fabs(phi[i] - center_t), ell);
            } else {
                double pb = 0.0;
                for (int i = 0; i < n; ++i) pb += phi[i];
                pb /= n;
                for (int i = 0; i < n; ++i) acc += std::pow(std::fabs(phi[i] - pb), ell);
            }
            return acc / n;
        };
        AuxHarvest h = harvest_aux(m, opt, derive_seed(seed, {idx}), u ? &*u : nullptr, eval);
        long min_needed = std::max<long>(32, h.drawn / 10);
        if (h.retained < min_needed)
            throw std::runtime_error("moment_scaling: insufficient effective sample size at n=" +
                                     std::to_string(n) + " (" + std::to_string(h.retained) +
                                     " retained of " + std::to_string(h.drawn) + ")");
        double mean = std::accumulate(h.values.begin(), h.values.end(), 0.0) / h.values.size();
        res.log_moment.push_back(std::log(mean));
    }
    std::vector<double> lx;
    for (int n : n_list) lx.push_back(std::log(static_cast<double>(n)));
    SlopeFit f = fit_slope(lx, res.log_moment);
    res.slope = f.slope;
    res.slope_se = f.se;
    res.pass = res.slope <= -0.5 * ell + res.tolerance;
    return res;
}

CorrelationScalingResult correlation_scaling(double theta, double beta0,
                                             const std::vector<int>& n_list,
                                             const ScalingOptions& opt, std::uint64_t seed) {
    if (n_list.size() < 2) throw std::invalid_argument("correlation_scaling: need at least two sizes");
    CorrelationScalingResult res;
    res.n_list = n_list;
    for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
        const int n = n_list[idx];
        Model m = Model::two_star_pm(n, theta, beta0);
        std::optional<RestrictionEvent> u;
        if (opt.conditional_on_u) u = RestrictionEvent::canonical_u(n, theta);

        // exchangeability pooling: E k_i k_j (i != j) = (E S1^2 - E S2)/(n(n-1))
        std::vector<double> chain_cov(opt.chains, 0.0), chain_var(opt.chains, 0.0);
        std::vector<long> chain_kept(opt.chains, 0);
        parallel_for(opt.chains, opt.threads, [&](std::size_t c) {
            ChainOptions co{opt.kind, opt.burnin_sweeps, opt.thinning_sweeps,
                            derive_seed(seed, {0xC0ull, idx, c})};
            double s1 = 0.0, s1sq = 0.0, s2 = 0.0;
            long kept = 0;
            run_chain(m, co, opt.samples_per_chain, [&](long, const Graph& g, const double*) {
                if (u && !u->contains(g)) return;
                long long sk = 0, sk2 = 0;
                for (int i = 0; i < n; ++i) {
                    long long k = g.degree(i);
                    sk += k;
                    sk2 += k * k;
                }
                s1 += static_cast<double>(sk);
                s1sq += static_cast<double>(sk) * sk;
                s2 += static_cast<double>(sk2);
                ++kept;
            });
            if (kept == 0) return;
            double m1 = s1 / kept, m11 = s1sq / kept, m2 = s2 / kept;
            double ekk = (m11 - m2) / (static_cast<double>(n) * (n - 1));
            double ek = m1 / n;
            chain_cov[c] = ekk - ek * ek;
            chain_var[c] = m2 / n - ek * ek;
            chain_kept[c] = kept;
        });
        double cov = 0.0, var = 0.0, wsum = 0.0;
        for (int c = 0; c < opt.chains; ++c) {
            if (chain_kept[c] == 0) continue;
            cov += chain_cov[c] * chain_kept[c];
            var += chain_var[c] * chain_kept[c];
            wsum += chain_kept[c];
        }
        if (wsum == 0.0) throw std::runtime_error("correlation_scaling: no samples retained");
        cov /= wsum;
        var /= wsum;
        double sd = 0.0;
        int used = 0;
        for (int c = 0; c < opt.chains; ++c)
            if (chain_kept[c] > 0) { sd += (chain_cov[c] - cov) * (chain_cov[c] - cov); ++used; }
        res.cov_k1k2.push_back(cov);
        res.cov_se.push_back(used > 1 ? std::sqrt(sd / (used - 1) / used) : 0.0);
        res.var_k1.push_back(var);
    }
    double first = res.cov_k1k2.front(), last = res.cov_k1k2.back();
    double ratio_floor = 0.05;
    if (last <= 2.0 * std::max(first, ratio_floor)) {
        res.verdict = "bounded";
    } else {
        double cn_first = first / n_list.front(), cn_last = last / n_list.back();
        if (cn_first > 0 && cn_last / cn_first >= 0.5 && cn_last / cn_first <= 2.0)
            res.verdict = "linear";
        else
            res.verdict = "inconclusive";
    }
    return res;
}

CriticalFluctuationResult critical_fluctuation(const std::vector<int>& n_list,
                                               const ScalingOptions& opt, std::uint64_t seed) {
    CriticalFluctuationResult res;
    res.n_list = n_list;
    res.quantile_probs = {0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99};

    std::vector<std::vector<double>> phibar_scaled(n_list.size());
    for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
        const int n = n_list[idx];
        Model m = Model::two_star_pm(n, 0.5, 0.0);
        std::vector<double> pb_samples, es_samples;
        std::vector<std::vector<double>> pb_chain(opt.chains), es_chain(opt.chains);
        parallel_for(opt.chains, opt.threads, [&](std::size_t c) {
            ChainOptions co{SamplerKind::Aux, opt.burnin_sweeps, opt.thinning_sweeps,
                            derive_seed(seed, {0xCFull, idx, c})};
            run_chain(m, co, opt.samples_per_chain, [&](long, const Graph& g, const double* phi) {
                double pb = 0.0;
                for (int i = 0; i < n; ++i) pb += phi[i];
                pb /= n;
                pb_chain[c].push_back(std::pow(n, 0.25) * pb);
                es_chain[c].push_back(0.5 * total_degree(g) / std::pow(n, 1.5));
            });
        });
        for (int c = 0; c < opt.chains; ++c) {
            pb_samples.insert(pb_samples.end(), pb_chain[c].begin(), pb_chain[c].end());
            es_samples.insert(es_samples.end(), es_chain[c].begin(), es_chain[c].end());
        }
        std::vector<double> pq, eq;
        for (double p : res.quantile_probs) {
            pq.push_back(empirical_quantile(pb_samples, p));
            eq.push_back(empirical_quantile(es_samples, p));
        }
        res.phibar_quantiles.push_back(pq);
        res.edge_sum_quantiles.push_back(eq);
        double med = empirical_quantile(pb_samples, 0.5);
        double mean = std::accumulate(pb_samples.begin(), pb_samples.end(), 0.0) / pb_samples.size();
        double var = 0.0;
        for (double v : pb_samples) var += (v - mean) * (v - mean);
        var /= pb_samples.size();
        res.phibar_medians.push_back(med);
        res.phibar_median_se.push_back(1.2533 * std::sqrt(var / pb_samples.size()));
        phibar_scaled[idx] = std::move(pb_samples);
    }
    for (std::size_t idx = 0; idx + 1 < n_list.size(); ++idx)
        res.phibar_kolmogorov.push_back(
            kolmogorov_distance(phibar_scaled[idx], phibar_scaled[idx + 1]));
    res.zeta_reference_quantiles = zeta_density_quantiles(res.quantile_probs);
    return res;
}

AltMeanShiftResult alt_mean_shift_at_criticality(double b, double t, const std::vector<int>& n_list,
                                                 const ScalingOptions& opt, std::uint64_t seed) {
    AltMeanShiftResult res;
    res.n_list = n_list;
    for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
        const int n = n_list[idx];
        int s = signal_count_from_exponent(n, b);
        double A = signal_strength_from_exponent(n, t);
        Model m = Model::two_star_pm(n, 0.5, make_beta(AlternativeSpec(0.0, s, A), n));
        long below = 0, total = 0;
        std::vector<long> below_c(opt.chains, 0), total_c(opt.chains, 0);
        parallel_for(opt.chains, opt.threads, [&](std::size_t c) {
            ChainOptions co{SamplerKind::Aux, opt.burnin_sweeps, opt.thinning_sweeps,
                            derive_seed(seed, {0xA17ull, idx, c})};
            run_chain(m, co, opt.samples_per_chain, [&](long, const Graph&, const double* phi) {
                double pb = 0.0;
                for (int i = 0; i < n; ++i) pb += phi[i];
                pb /= n;
                ++total_c[c];
                if (std::tanh(pb) <= std::pow(n, -0.25)) ++below_c[c];
            });
        });
        for (int c = 0; c < opt.chains; ++c) { below += below_c[c]; total += total_c[c]; }
        res.fraction_below.push_back(static_cast<double>(below) / total);
    }
    res.decreasing = true;
    for (std::size_t i = 0; i + 1 < res.fraction_below.size(); ++i)
        if (res.fraction_below[i + 1] >= res.fraction_below[i]) res.decreasing = false;
    return res;
}

ConcentrationEnvelopeResult concentration_envelope(double theta, double beta0, int fit_n,
                                                   const std::vector<int>& check_ns, int reps,
                                                   const std::vector<double>& probe_levels,
                                                   const SamplerOptions& so, std::uint64_t seed,
                                                   unsigned threads) {
    if (probe_levels.empty()) throw std::invalid_argument("concentration_envelope: no probes");
    auto abs_stats = [&](int n, std::uint64_t tag) {
        Model m = Model::two_star_pm(n, theta, beta0);
        long burnin = resolve_burnin(m, so);
        auto stats = replicate_stats(m, {DetectorKind::CondCenteredSum}, theta, beta0, m.motif, so,
                                     burnin, reps, seed, tag, threads);
        std::vector<double> xs(stats.size());
        for (std::size_t i = 0; i < stats.size(); ++i) xs[i] = std::fabs(stats[i][0]);
        return xs;
    };

    ConcentrationEnvelopeResult res;
    {
        std::vector<double> xs = abs_stats(fit_n, 0xF17ull);
        double m_pairs = 0.5 * fit_n * (fit_n - 1);
        for (double q : probe_levels) {
            double x = empirical_quantile(xs, q);
            long exceed = std::count_if(xs.begin(), xs.end(), [&](double v) { return v > x; });
            double p = static_cast<double>(exceed) / xs.size();
            if (p <= 0.0 || x <= 0.0) continue;
            double need = x * x / (m_pairs * std::log(2.0 / p));
            res.lambda_hat = std::max(res.lambda_hat, need);
        }
    }
    int total_probes = 0, total_violations = 0;
    for (std::size_t ci = 0; ci < check_ns.size(); ++ci) {
        int n = check_ns[ci];
        std::vector<double> xs = abs_stats(n, derive_seed(0xC4Eull, {ci}));
        double m_pairs = 0.5 * n * (n - 1);
        EnvelopeCheck chk{n, 0, 0};
        for (double q : probe_levels) {
            double x = empirical_quantile(xs, q);
            if (x <= 0.0) continue;
            long exceed = std::count_if(xs.begin(), xs.end(), [&](double v) { return v > x; });
            double p = static_cast<double>(exceed) / xs.size();
            double envelope = 2.0 * std::exp(-x * x / (1.1 * res.lambda_hat * m_pairs));
            ++chk.probes;
            if (p > envelope) ++chk.violations;
        }
        total_probes += chk.probes;
        total_violations += chk.violations;
        res.checks.push_back(chk);
    }
    res.violation_fraction = total_probes == 0 ? 0.0
                                               : static_cast<double>(total_violations) / total_probes;
    res.pass = res.violation_fraction <= 0.10;
    return res;
}

std::vector<double> zeta_density_quantiles(const std::vector<double>& probs) {
    const double zmax = 12.0;
    const int steps = 480000;
    const double h = 2.0 * zmax / steps;
    std::vector<double> cdf(steps + 1, 0.0);
    double acc = 0.0;
    double prev = std::exp(-std::pow(-zmax, 4) / 12.0 - std::pow(-zmax, 2) / 24.0);
    for (int i = 1; i <= steps; ++i) {
        double z = -zmax + i * h;
        double f = std::exp(-std::pow(z, 4) / 12.0 - z * z / 24.0);
        acc += 0.5 * (prev + f) * h;
        cdf[i] = acc;
        prev = f;
    }
    std::vector<double> out;
    for (double p : probs) {
        double target = p * acc;
        auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
        std::size_t i = static_cast<std::size_t>(it - cdf.begin());
        out.push_back(-zmax + i * h);
    }
    return out;
}

} // namespace dcergm
