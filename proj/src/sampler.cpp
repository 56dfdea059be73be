#include "dcergm/sampler.hpp"

#include <cmath>

#include "dcergm/special.hpp"

namespace dcergm {

namespace {

std::vector<int> native_degrees(const Graph& g) { return g.degrees(); }

long long deg_sq_sum(const std::vector<int>& deg) {
    long long s = 0;
    for (int d : deg) s += static_cast<long long>(d) * d;
    return s;
}

} // namespace

ChainState ChainState::from_graph(Graph g, std::uint64_t seed_tag) {
    ChainState st{std::move(g), {}, 0, seed_tag};
    st.degrees = native_degrees(st.graph);
    st.sum_deg_sq = deg_sq_sum(st.degrees);
    return st;
}

ChainState ChainState::random_init(const Model& m, Rng& rng, std::uint64_t seed_tag) {
    Graph g(m.n, m.encoding);
    for (int i = 0; i < m.n; ++i)
        for (int j = i + 1; j < m.n; ++j)
            if (rng() & 1u) g.set_edge(i, j, true);
    return from_graph(std::move(g), seed_tag);
}

void ChainState::toggle_edge(int i, int j, bool present) {
    if (graph.has_edge(i, j) == present) return;
    graph.set_edge(i, j, present);
    int delta = present ? 1 : -1;
    if (graph.encoding() == Encoding::PlusMinus) delta *= 2;
    for (int v : {i, j}) {
        sum_deg_sq -= static_cast<long long>(degrees[v]) * degrees[v];
        degrees[v] += delta;
        sum_deg_sq += static_cast<long long>(degrees[v]) * degrees[v];
    }
}

bool ChainState::caches_consistent() const {
    return degrees == native_degrees(graph) && sum_deg_sq == deg_sq_sum(degrees);
}

namespace {

// Heat-bath acceptance probability using the chain's integer caches.
double plus_prob_cached(const ChainState& st, const Model& m, int i, int j) {
    if (m.encoding == Encoding::PlusMinus) {
        int y = st.graph.edge_value(i, j);
        double arg = m.theta * (st.degrees[i] + st.degrees[j] - 2 * y) / (m.n - 1) +
                     0.5 * (m.beta[i] + m.beta[j]);
        return 0.5 * (1.0 + std::tanh(arg));
    }
    double te;
    if (m.motif.is_edge()) {
        te = 2.0;
    } else if (m.motif.is_two_star()) {
        int extra = st.graph.has_edge(i, j) ? 0 : 1;
        te = 2.0 * (st.degrees[i] + st.degrees[j] + 2 * extra - 2) / static_cast<double>(m.n);
    } else {
        te = count_through_edge_scaled(m.motif, st.graph, i, j);
    }
    return psi(m.theta * te + m.beta[i] + m.beta[j]);
}

std::pair<int, int> uniform_pair(int n, Rng& rng) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    int i = pick(rng), j = pick(rng);
    while (j == i) j = pick(rng);
    return {std::min(i, j), std::max(i, j)};
}

} // namespace

void glauber_step(ChainState& st, const Model& m, Rng& rng) {
    auto [i, j] = uniform_pair(m.n, rng);
    double p = plus_prob_cached(st, m, i, j);
    st.toggle_edge(i, j, uniform01(rng) < p);
}

void glauber_sweep(ChainState& st, const Model& m, Rng& rng) {
    std::size_t sweeps = st.graph.pair_count();
    for (std::size_t k = 0; k < sweeps; ++k) glauber_step(st, m, rng);
}

AuxState AuxState::random_init(const Model& m, Rng& rng, std::uint64_t seed_tag) {
    if (!m.is_two_star_pm())
        throw std::invalid_argument("aux sampler: PlusMinus two-star model required");
    if (!(m.theta > 0.0)) throw std::invalid_argument("aux sampler: theta > 0 required");
    if (m.n < 2) throw std::invalid_argument("aux sampler: n >= 2 required");
    AuxState st;
    st.seed_lineage = seed_tag;
    st.y = Graph(m.n, Encoding::PlusMinus);
    for (int i = 0; i < m.n; ++i)
        for (int j = i + 1; j < m.n; ++j)
            if (rng() & 1u) st.y.set_edge(i, j, true);
    st.degrees = st.y.degrees();
    st.phi.assign(m.n, 0.0);
    return st;
}

bool AuxState::caches_consistent() const { return degrees == y.degrees(); }

double AuxState::phi_bar() const {
    double s = 0.0;
    for (double p : phi) s += p;
    return s / static_cast<double>(phi.size());
}

void aux_step(AuxState& st, const Model& m, Rng& rng) {
    const int n = m.n;
    const double sigma = 1.0 / std::sqrt(m.theta * (n - 1));
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < n; ++i)
        st.phi[i] = static_cast<double>(st.degrees[i]) / (n - 1) + sigma * gauss(rng);

    // P(Y_ij = +1 | phi) = w/(1+w) with w = exp(2 theta (phi_i+phi_j) + beta_i + beta_j);
    // the comparison u(1+w) < w avoids a per-edge division.
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = std::exp(2.0 * m.theta * st.phi[i] + m.beta[i]);
    std::vector<int> plus_count(n, 0);
    for (int i = 0; i < n; ++i) {
        const double wi = w[i];
        int ci = 0;
        for (int j = i + 1; j < n; ++j) {
            double wij = wi * w[j];
            bool plus = uniform01(rng) * (1.0 + wij) < wij;
            st.y.set_edge_unchecked(i, j, plus);
            ci += plus;
            plus_count[j] += plus;
        }
        plus_count[i] += ci;
    }
    for (int i = 0; i < n; ++i) st.degrees[i] = 2 * plus_count[i] - (n - 1);
}

long default_burnin_sweeps(const Model& m) {
    bool critical = m.is_two_star_pm() && m.theta == 0.5 && m.constant_beta() && m.beta[0] == 0.0;
    return critical ? 2000 : 200;
}

void run_chain(const Model& m, const ChainOptions& opt, long n_samples,
               const std::function<void(long, const Graph&, const double*)>& on_sample) {
    if (n_samples < 0) throw std::invalid_argument("run_chain: n_samples >= 0");
    if (opt.thinning_sweeps < 1) throw std::invalid_argument("run_chain: thinning must be >= 1");
    long burnin = opt.burnin_sweeps >= 0 ? opt.burnin_sweeps : default_burnin_sweeps(m);
    Rng rng(opt.seed);

    if (opt.kind == SamplerKind::Exact) {
        ExactSampler es{exact_distribution(m)};
        for (long s = 0; s < n_samples; ++s) on_sample(s, es.draw(rng), nullptr);
        return;
    }
    if (opt.kind == SamplerKind::Aux) {
        AuxState st = AuxState::random_init(m, rng, opt.seed);
        for (long b = 0; b < burnin; ++b) aux_step(st, m, rng);
        for (long s = 0; s < n_samples; ++s) {
            for (long t = 0; t < opt.thinning_sweeps; ++t) aux_step(st, m, rng);
            on_sample(s, st.y, st.phi.data());
        }
        return;
    }
    ChainState st = ChainState::random_init(m, rng, opt.seed);
    for (long b = 0; b < burnin; ++b) glauber_sweep(st, m, rng);
    for (long s = 0; s < n_samples; ++s) {
        for (long t = 0; t < opt.thinning_sweeps; ++t) glauber_sweep(st, m, rng);
        on_sample(s, st.graph, nullptr);
    }
}

ExactSampler::ExactSampler(ExactDistribution dist) : dist_(std::move(dist)) {
    cdf_.resize(dist_.probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist_.probs.size(); ++i) {
        acc += dist_.probs[i];
        cdf_[i] = acc;
    }
    cdf_.back() = 1.0;
}

Graph ExactSampler::draw(Rng& rng) const {
    double u = uniform01(rng);
    std::size_t lo = 0, hi = cdf_.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (cdf_[mid] < u) lo = mid + 1; else hi = mid;
    }
    return Graph::from_pair_mask(dist_.model.n, static_cast<std::uint64_t>(lo), dist_.model.encoding);
}

Graph exact_sample(const Model& m, Rng& rng) {
    ExactSampler es{exact_distribution(m)};
    return es.draw(rng);
}

RestrictedSampleResult restricted_sample(const Model& m, const RestrictionEvent& u,
                                         const RestrictedSampleOptions& opt, std::uint64_t seed) {
    std::optional<ExactSampler> es;
    if (opt.kind == SamplerKind::Exact) es.emplace(exact_distribution(m));
    for (int attempt = 1; attempt <= opt.max_attempts; ++attempt) {
        std::optional<Graph> drawn;
        if (es) {
            Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(attempt)}));
            drawn = es->draw(rng);
        } else {
            ChainOptions co{opt.kind, opt.burnin_sweeps, 1, derive_seed(seed, {static_cast<std::uint64_t>(attempt)})};
            run_chain(m, co, 1, [&](long, const Graph& g, const double*) { drawn = g; });
        }
        if (u.contains(*drawn)) return {std::move(*drawn), attempt};
    }
    throw std::runtime_error("restricted_sample: no sample in event '" + u.name + "' after " +
                             std::to_string(opt.max_attempts) +
                             " attempts (acceptance below ~" + std::to_string(1.0 / opt.max_attempts) +
                             ", configured floor " + std::to_string(opt.acceptance_floor) + ")");
}

} // namespace dcergm
