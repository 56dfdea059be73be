#include "doctest.h"

#include <cmath>

#include "dcergm/detectors.hpp"
#include "dcergm/experiments.hpp"
#include "dcergm/oracle.hpp"
#include "dcergm/special.hpp"

using namespace dcergm;

namespace {

Graph complete_graph(int n, Encoding enc = Encoding::ZeroOne) {
    Graph g(n, enc);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.set_edge(i, j, true);
    return g;
}

} // namespace

TEST_CASE("centered sum closed forms at theta=0") {
    const int n = 6;
    const double m_pairs = n * (n - 1) / 2.0;
    Graph empty(n, Encoding::ZeroOne);
    CHECK(cond_centered_sum(empty, 0.0, 0.0, SubgraphSpec::two_star()) ==
          doctest::Approx(-m_pairs / 2.0).epsilon(1e-14));
    CHECK(cond_centered_sum(complete_graph(n), 0.0, 0.0, SubgraphSpec::two_star()) ==
          doctest::Approx(m_pairs / 2.0).epsilon(1e-14));

    // at theta=0 the conditional centering is a constant shift
    Rng rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        Graph g(n, Encoding::ZeroOne);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() & 1u) g.set_edge(i, j, true);
        double edges = 0.0;
        for (int i = 0; i < n; ++i) edges += g.degree(i);
        edges /= 2.0;
        double beta0 = 0.2;
        CHECK(cond_centered_sum(g, 0.0, beta0, SubgraphSpec::two_star()) ==
              doctest::Approx(edges - m_pairs * psi(2.0 * beta0)).epsilon(1e-12));
    }

    // PlusMinus at theta=0: constant centering tanh(beta0)
    Rng prng(5);
    for (int rep = 0; rep < 5; ++rep) {
        Graph y(n, Encoding::PlusMinus);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (prng() & 1u) y.set_edge(i, j, true);
        double edge_sum = 0.5 * total_degree(y);
        double beta0 = -0.15;
        CHECK(cond_centered_sum(y, 0.0, beta0, SubgraphSpec::two_star()) ==
              doctest::Approx(edge_sum - m_pairs * std::tanh(beta0)).epsilon(1e-12));
    }
}

TEST_CASE("centered max closed forms") {
    const int n = 6;
    Graph empty(n, Encoding::ZeroOne);
    CHECK(cond_centered_max(empty, 0.0, 0.0, SubgraphSpec::two_star()) ==
          doctest::Approx(-(n - 1) / 2.0).epsilon(1e-14));

    // planted hub: vertex 1 joined to everyone, no other edges
    Graph hub(n, Encoding::ZeroOne);
    for (int j = 1; j < n; ++j) hub.set_edge(0, j, true);
    CHECK(cond_centered_max(hub, 0.0, 0.0, SubgraphSpec::two_star()) ==
          doctest::Approx((n - 1) / 2.0).epsilon(1e-14));

    // vertex-transitive inputs have all per-vertex sums equal to 2*sum/n
    for (double theta : {0.0, 0.3}) {
        for (const Graph& g : {complete_graph(5, Encoding::PlusMinus), Graph(5, Encoding::PlusMinus)}) {
            double total = cond_centered_sum(g, theta, 0.1, SubgraphSpec::two_star());
            double mx = cond_centered_max(g, theta, 0.1, SubgraphSpec::two_star());
            CHECK(mx == doctest::Approx(2.0 * total / 5.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("total degree") {
    CHECK(total_degree(complete_graph(5, Encoding::PlusMinus)) == 20.0);
    CHECK(total_degree(Graph(5, Encoding::PlusMinus)) == -20.0);
    // balanced graph: 5 of 10 edges positive, e.g. the 5-cycle
    Graph cyc(5, Encoding::PlusMinus);
    for (int i = 0; i < 5; ++i) cyc.set_edge(i, (i + 1) % 5, true);
    CHECK(total_degree(cyc) == 0.0);
    CHECK(total_degree(complete_graph(4)) == 12.0);
}

TEST_CASE("null mean of the centered sum vanishes (tower property)") {
    // oracle summation over the full state space
    for (int n : {3, 4}) {
        Model m = Model::two_star_pm(n, 0.4, 0.1);
        ExactDistribution d = exact_distribution(m);
        double mean = 0.0;
        for (std::uint64_t mask = 0; mask < d.probs.size(); ++mask)
            mean += d.probs[mask] * cond_centered_sum(Graph::from_pair_mask(n, mask, m.encoding),
                                                      m.theta, 0.1, m.motif);
        CHECK(std::fabs(mean) < 1e-10);
    }
    // Monte Carlo at n=200
    {
        Model m = Model::two_star_pm(200, 0.4, 0.0);
        const int reps = 256;
        double mean = 0.0, sq = 0.0;
        for (int r = 0; r < reps; ++r) {
            ChainOptions co{SamplerKind::Aux, 200, 1, derive_seed(91, {static_cast<std::uint64_t>(r)})};
            run_chain(m, co, 1, [&](long, const Graph& g, const double*) {
                double s = cond_centered_sum(g, m.theta, 0.0, m.motif);
                mean += s;
                sq += s * s;
            });
        }
        mean /= reps;
        double se = std::sqrt(std::max(sq / reps - mean * mean, 1e-12) / reps);
        CHECK(std::fabs(mean) < 4.0 * se);
    }
}

TEST_CASE("centered sum mean grows with the planted signal") {
    const int n = 50, s = 5, reps = 200;
    Model null_m = Model::two_star_pm(n, 0.3, 0.0);
    double prev = -1e18;
    for (double A : {0.0, 0.3, 0.8}) {
        Model alt = Model::two_star_pm(n, 0.3, make_beta(AlternativeSpec(0.0, s, A), n));
        double mean = 0.0;
        for (int r = 0; r < reps; ++r) {
            ChainOptions co{SamplerKind::Aux, 200, 1,
                            derive_seed(95, {static_cast<std::uint64_t>(A * 1000), static_cast<std::uint64_t>(r)})};
            run_chain(alt, co, 1, [&](long, const Graph& g, const double*) {
                mean += cond_centered_sum(g, null_m.theta, 0.0, null_m.motif);
            });
        }
        mean /= reps;
        CHECK(mean > prev);
        prev = mean;
    }
}

TEST_CASE("threshold specs") {
    Model m = Model::two_star_pm(100, 0.3, 0.0);
    ChainOptions co{SamplerKind::Aux, 100, 1, 0};

    DetectorConfig sched{DetectorKind::CondCenteredSum, ThresholdSpec::schedule(1.0, 1.1)};
    CHECK(calibrate_threshold(sched, m, co, 1, 7) ==
          doctest::Approx(std::pow(100.0, 1.1)).epsilon(1e-12));

    DetectorConfig expl{DetectorKind::CondCenteredSum, ThresholdSpec::explicit_value(42.0)};
    CHECK(calibrate_threshold(expl, m, co, 1, 7) == 42.0);

    // alpha = 1/2 on a sign-symmetric null statistic sits near zero
    Model sym = Model::two_star_pm(50, 0.2, 0.0);
    DetectorConfig cal{DetectorKind::CondCenteredSum, ThresholdSpec::calibrated(0.5, 600)};
    double ln = calibrate_threshold(cal, sym, {SamplerKind::Aux, 200, 1, 0}, 2, 11);
    double sd = std::sqrt(50.0 * 49.0 / 2.0); // theta=0-scale upper bound on the sd
    CHECK(std::fabs(ln) < 4.0 * 1.2533 * sd / std::sqrt(600.0));

    CHECK_THROWS_AS(ThresholdSpec::calibrated(0.0, 500), std::invalid_argument);
    CHECK_THROWS_AS(ThresholdSpec::calibrated(1.0, 500), std::invalid_argument);
    CHECK_THROWS_AS(ThresholdSpec::calibrated(0.05, 99), std::invalid_argument);
    CHECK_THROWS_AS(ThresholdSpec::schedule(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("decide uses a strict inequality") {
    CHECK(decide(5.0, 3.0).reject);
    CHECK(!decide(3.0, 3.0).reject);
    CHECK(!decide(-1.0, 0.0).reject);
    CHECK(decide(3.0, 3.0).statistic == 3.0);
    CHECK_THROWS_AS(decide(std::nan(""), 0.0), std::invalid_argument);
}

TEST_CASE("detector names round-trip") {
    for (auto k : {DetectorKind::CondCenteredSum, DetectorKind::CondCenteredMax,
                   DetectorKind::TotalDegree})
        CHECK(detector_from_name(detector_name(k)) == k);
    CHECK_THROWS_AS(detector_from_name("nope"), std::invalid_argument);
}
