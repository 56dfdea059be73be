#include "doctest.h"

#include <cmath>

#include "dcergm/experiments.hpp"

using namespace dcergm;

namespace {

bool reports_equal(const RiskReport& a, const RiskReport& b) {
    return a.type1 == b.type1 && a.type2 == b.type2 && a.risk == b.risk &&
           a.threshold == b.threshold && a.reps_per_hypothesis == b.reps_per_hypothesis;
}

} // namespace

TEST_CASE("risk at A=0 is 1 up to Monte Carlo error") {
    Model null_m = Model::two_star_pm(30, 0.3, 0.0);
    AlternativeSpec alt(0.0, 5, 0.0);
    DetectorConfig det{DetectorKind::CondCenteredSum, ThresholdSpec::calibrated(0.05, 200)};
    RiskReport r = estimate_risk(null_m, alt, det, {SamplerKind::Aux, 100, 1}, 200, 21, 2);
    CHECK(std::fabs(r.risk - 1.0) < 0.12);
    CHECK(r.type1 >= 0.0);
    CHECK(r.type2 <= 1.0);
    CHECK(r.s == 5);
    CHECK(r.reps_per_hypothesis == 200);
}

TEST_CASE("saturated signal drives the risk to zero") {
    Model null_m = Model::two_star_pm(30, 0.3, 0.0);
    AlternativeSpec alt(0.0, 15, 5.0);
    DetectorConfig det{DetectorKind::CondCenteredSum, ThresholdSpec::calibrated(0.05, 200)};
    RiskReport r = estimate_risk(null_m, alt, det, {SamplerKind::Aux, 100, 1}, 200, 23, 2);
    CHECK(r.risk < 0.2);
    CHECK(r.type2 < 0.05);
}

TEST_CASE("risk reports are reproducible and schedule independent") {
    Model null_m = Model::two_star_pm(24, 0.4, 0.1);
    AlternativeSpec alt(0.1, 3, 0.4);
    DetectorConfig det{DetectorKind::CondCenteredMax, ThresholdSpec::calibrated(0.1, 150)};
    RiskReport a = estimate_risk(null_m, alt, det, {SamplerKind::Aux, 50, 1}, 150, 29, 1);
    RiskReport b = estimate_risk(null_m, alt, det, {SamplerKind::Aux, 50, 1}, 150, 29, 2);
    RiskReport c = estimate_risk(null_m, alt, det, {SamplerKind::Aux, 50, 1}, 150, 29, 2);
    CHECK(reports_equal(a, b)); // thread count does not change the result
    CHECK(reports_equal(b, c));
    RiskReport d = estimate_risk(null_m, alt, det, {SamplerKind::Aux, 50, 1}, 150, 30, 2);
    CHECK(!reports_equal(a, d));

    CHECK_THROWS_AS(estimate_risk(null_m, alt, det, {SamplerKind::Aux, 50, 1}, 50, 29, 1),
                    std::invalid_argument); // reps >= 100
}

TEST_CASE("calibrated type I error stays near its level") {
    Model null_m = Model::two_star_pm(50, 0.3, 0.0);
    AlternativeSpec alt(0.0, 2, 0.0);
    const double alpha = 0.1;
    DetectorConfig det{DetectorKind::TotalDegree, ThresholdSpec::calibrated(alpha, 1000)};
    RiskReport r = estimate_risk(null_m, alt, det, {SamplerKind::Aux, 150, 1}, 1000, 31, 2);
    double se = std::sqrt(alpha * (1 - alpha) / 1000.0);
    CHECK(r.type1 >= alpha - 3.0 * se);
    CHECK(r.type1 <= alpha + 3.0 * se);
}

TEST_CASE("phase diagram table shape and trend fields") {
    PhaseGridConfig cfg;
    cfg.cells = {{0.7, -0.2}, {0.3, -0.3}};
    cfg.n_list = {16, 24};
    cfg.theta = 0.3;
    cfg.beta0 = 0.0;
    cfg.detectors = {{DetectorKind::CondCenteredSum, ThresholdSpec::schedule(2.0, 1.25)},
                     {DetectorKind::CondCenteredMax, ThresholdSpec::schedule(2.0, 0.55)}};
    cfg.reps = 120;
    cfg.sampler = {SamplerKind::Aux, 100, 1};
    cfg.seed = 37;
    cfg.threads = 2;
    auto pts = phase_diagram(cfg);
    REQUIRE(pts.size() == 2 * 2 * 2);
    // sorted by (cell, detector, n); first row of each group has delta 0
    for (std::size_t i = 0; i < pts.size(); i += 2) {
        CHECK(pts[i].n == 16);
        CHECK(pts[i + 1].n == 24);
        CHECK(pts[i].risk_delta_prev_n == 0.0);
        CHECK(pts[i + 1].risk_delta_prev_n ==
              doctest::Approx(pts[i + 1].report.risk - pts[i].report.risk));
        CHECK(pts[i].regime == Regime::Theta1);
        CHECK(pts[i].report.s == signal_count_from_exponent(16, pts[i].b));
    }
    // identical seeds reproduce bit-for-bit
    auto pts2 = phase_diagram(cfg);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(pts[i].report.risk == pts2[i].report.risk);
}

TEST_CASE("moment scaling slope near -1 at the critical point") {
    ScalingOptions opt;
    opt.chains = 6;
    opt.samples_per_chain = 80;
    opt.thinning_sweeps = 2;
    opt.burnin_sweeps = 300;
    opt.threads = 2;
    MomentScalingResult r = moment_scaling(0.5, BetaMode::Zero, 2, {40, 80, 160}, opt, 41);
    CHECK(r.slope == doctest::Approx(-1.0).epsilon(0.3));
    CHECK(r.log_moment.size() == 3);

    CHECK_THROWS_AS(moment_scaling(0.5, BetaMode::Zero, 0, {40, 80}, opt, 41),
                    std::invalid_argument);
    // conditional variant needs theta > 1/2
    CHECK_THROWS_AS(
        [&] {
            ScalingOptions o2 = opt;
            o2.conditional_on_u = true;
            moment_scaling(0.4, BetaMode::Zero, 2, {40, 80}, o2, 41);
        }(),
        std::invalid_argument);
}

TEST_CASE("conditional moment scaling in the supercritical regime") {
    ScalingOptions opt;
    opt.chains = 6;
    opt.samples_per_chain = 60;
    opt.thinning_sweeps = 2;
    opt.burnin_sweeps = 200;
    opt.conditional_on_u = true;
    opt.threads = 2;
    MomentScalingResult r = moment_scaling(0.8, BetaMode::Box, 2, {40, 80, 160}, opt, 43);
    // conditional moments shrink at the same 1/n rate: slope at most -1 up to tolerance
    CHECK(r.slope <= -1.0 + 0.35);
}

TEST_CASE("correlation scaling verdicts") {
    ScalingOptions opt;
    opt.chains = 8;
    opt.samples_per_chain = 120;
    opt.thinning_sweeps = 1;
    opt.burnin_sweeps = 200;
    opt.threads = 2;

    CorrelationScalingResult sub = correlation_scaling(0.3, 0.0, {50, 100, 200}, opt, 47);
    CHECK(sub.verdict == "bounded");
    CHECK(sub.cov_k1k2.size() == 3);

    // independent edges: Cov(k_1,k_2) = Var(Y_12) = 1, trivially bounded
    ScalingOptions opt0 = opt;
    opt0.kind = SamplerKind::Glauber;
    opt0.burnin_sweeps = 50;
    CorrelationScalingResult ind = correlation_scaling(0.0, 0.0, {20, 40}, opt0, 49);
    CHECK(ind.verdict == "bounded");
    CHECK(ind.cov_k1k2[0] == doctest::Approx(1.0).epsilon(0.5));

    ScalingOptions optc = opt;
    optc.burnin_sweeps = 600;
    CorrelationScalingResult crit = correlation_scaling(0.5, 0.0, {50, 100, 200}, optc, 51);
    CHECK(crit.verdict == "linear");
}

TEST_CASE("critical fluctuation tables") {
    ScalingOptions opt;
    opt.chains = 8;
    opt.samples_per_chain = 100;
    opt.thinning_sweeps = 4;
    opt.burnin_sweeps = 400;
    opt.threads = 2;
    CriticalFluctuationResult r = critical_fluctuation({50, 100}, opt, 53);
    REQUIRE(r.n_list.size() == 2);
    CHECK(r.phibar_kolmogorov.size() == 1);
    CHECK(r.phibar_kolmogorov[0] < 0.25);
    for (std::size_t i = 0; i < r.n_list.size(); ++i)
        CHECK(std::fabs(r.phibar_medians[i]) < 6.0 * r.phibar_median_se[i] + 0.05);
    // zeta reference quantiles are symmetric
    auto& zq = r.zeta_reference_quantiles;
    REQUIRE(zq.size() == r.quantile_probs.size());
    CHECK(zq.front() == doctest::Approx(-zq.back()).epsilon(1e-3));
    CHECK(zq[4] == doctest::Approx(0.0).epsilon(1e-3)); // median of the quartic density
}

TEST_CASE("alt mean shift control at A=0 is stable") {
    ScalingOptions opt;
    opt.chains = 4;
    opt.samples_per_chain = 60;
    opt.thinning_sweeps = 2;
    opt.burnin_sweeps = 400;
    opt.threads = 2;
    // b+t very negative: alternative indistinguishable from null, fraction stays high
    AltMeanShiftResult r = alt_mean_shift_at_criticality(0.3, -3.0, {50, 100}, opt, 59);
    REQUIRE(r.fraction_below.size() == 2);
    for (double f : r.fraction_below) CHECK(f > 0.8);
    CHECK(std::fabs(r.fraction_below[0] - r.fraction_below[1]) < 0.15);
}

TEST_CASE("concentration envelope fits and checks") {
    SamplerOptions so{SamplerKind::Aux, 150, 1};
    ConcentrationEnvelopeResult r =
        concentration_envelope(0.3, 0.0, 60, {90}, 500, {0.5, 0.75, 0.9}, so, 61, 2);
    CHECK(r.lambda_hat > 0.0);
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].probes == 3);
    CHECK(r.pass);
}

TEST_CASE("zeta density quantiles by quadrature") {
    auto q = zeta_density_quantiles({0.25, 0.5, 0.75});
    CHECK(q[1] == doctest::Approx(0.0).epsilon(1e-3));
    CHECK(q[0] < 0.0);
    CHECK(q[2] > 0.0);
    CHECK(q[2] == doctest::Approx(-q[0]).epsilon(1e-3));
}
