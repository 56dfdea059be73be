#pragma once
#include <cstdint>
#include <functional>
#include <optional>

#include "dcergm/model.hpp"
#include "dcergm/oracle.hpp"
#include "dcergm/rng.hpp"

namespace dcergm {

enum class SamplerKind { Glauber, Aux, Exact };

// Glauber chain state: the graph plus integer caches (native degrees and the
// two-star bookkeeping sum of squared degrees) kept in sync with every flip.
struct ChainState {
    Graph graph;
    std::vector<int> degrees;
    long long sum_deg_sq = 0;
    std::uint64_t seed_lineage = 0;

    static ChainState from_graph(Graph g, std::uint64_t seed_tag);
    // fair-coin edges, the symmetric start used by all chains
    static ChainState random_init(const Model& m, Rng& rng, std::uint64_t seed_tag);

    void toggle_edge(int i, int j, bool present);
    bool caches_consistent() const;
};

// One heat-bath update of a uniformly chosen pair.
void glauber_step(ChainState& st, const Model& m, Rng& rng);
// One sweep = C(n,2) single-edge updates at uniformly chosen pairs.
void glauber_sweep(ChainState& st, const Model& m, Rng& rng);

// Auxiliary-variable chain for the PlusMinus two-star model.
struct AuxState {
    Graph y;
    std::vector<double> phi;
    std::vector<int> degrees;
    std::uint64_t seed_lineage = 0;

    static AuxState random_init(const Model& m, Rng& rng, std::uint64_t seed_tag);
    bool caches_consistent() const;
    double phi_bar() const;
};

// One cycle: phi_i ~ N(k_i/(n-1), 1/(theta(n-1))) given Y, then every Y_ij
// independently +1 with probability psi(2 theta (phi_i+phi_j) + beta_i+beta_j).
void aux_step(AuxState& st, const Model& m, Rng& rng);

long default_burnin_sweeps(const Model& m); // 2000 at the critical point (1/2,0), 200 otherwise

struct ChainOptions {
    SamplerKind kind = SamplerKind::Aux;
    long burnin_sweeps = -1; // -1: default_burnin_sweeps(model)
    long thinning_sweeps = 1;
    std::uint64_t seed = 1;
};

// Drive a chain and hand every retained sample to on_sample. phi is null for
// non-auxiliary kinds. Deterministic given (model, options).
void run_chain(const Model& m, const ChainOptions& opt, long n_samples,
               const std::function<void(long, const Graph&, const double*)>& on_sample);

// Inverse-CDF sampler over an exact distribution (n <= 6).
class ExactSampler {
public:
    explicit ExactSampler(ExactDistribution dist);
    Graph draw(Rng& rng) const;
    const ExactDistribution& distribution() const { return dist_; }

private:
    ExactDistribution dist_;
    std::vector<double> cdf_;
};

Graph exact_sample(const Model& m, Rng& rng);

// Rejection into the event u: fresh independently seeded runs of the base
// sampler until a sample lands in u.
struct RestrictedSampleResult {
    Graph graph;
    int attempts = 0;
};
struct RestrictedSampleOptions {
    SamplerKind kind = SamplerKind::Aux;
    long burnin_sweeps = -1;
    int max_attempts = 400;
    double acceptance_floor = 0.005; // diagnostic only, reported on failure
};
RestrictedSampleResult restricted_sample(const Model& m, const RestrictionEvent& u,
                                         const RestrictedSampleOptions& opt, std::uint64_t seed);

} // namespace dcergm
