#include "dcergm/oracle.hpp"

#include <bit>
#include <cmath>

#include "dcergm/special.hpp"

namespace dcergm {

RestrictionEvent RestrictionEvent::whole_space() {
    return {"whole_space", [](const Graph&) { return true; }};
}

RestrictionEvent RestrictionEvent::min_degree_at_least(double threshold) {
    return {"min_degree>=" + std::to_string(threshold), [threshold](const Graph& g) {
                for (int i = 0; i < g.n(); ++i)
                    if (g.degree(i) < threshold) return false;
                return true;
            }};
}

RestrictionEvent RestrictionEvent::canonical_u(int n, double theta) {
    double t = find_t(theta);
    RestrictionEvent ev = min_degree_at_least((n - 1) * t / 2.0);
    ev.name = "U(t=" + std::to_string(t) + ")";
    return ev;
}

namespace {

constexpr int kMaxOracleN = 6;

void require_small(int n, const char* what) {
    if (n < 1 || n > kMaxOracleN)
        throw std::invalid_argument(std::string(what) + ": enumeration supports n <= 6");
}

// Log-weights for every pair bitmask in integer order. Integer sufficient
// statistics (one-degrees, triangle count) are maintained under the
// single-edge toggles of the binary counter, so no floating-point state
// accumulates across states.
std::vector<double> enumerate_log_weights(const Model& m) {
    const int n = m.n;
    const std::size_t npairs = static_cast<std::size_t>(n) * (n - 1) / 2;
    const std::uint64_t total = 1ull << npairs;
    auto pairs = all_pairs(n);

    const bool pm = m.encoding == Encoding::PlusMinus;
    const bool motif_edge = m.motif.is_edge();
    const bool motif_star = m.motif.is_two_star();
    const bool motif_tri = m.motif.is_triangle();
    const bool generic = !pm && !motif_edge && !motif_star && !motif_tri;

    Graph g(n, m.encoding);
    std::vector<int> ones(n, 0);
    long long tri = 0;

    const double scale = pm ? (n > 1 ? m.theta / (n - 1) : 0.0)
                            : m.theta / std::pow(static_cast<double>(n), m.motif.zeta - 2);

    std::vector<double> lw(total);
    auto eval = [&]() {
        double stat;
        if (pm) {
            long long sumsq = 0;
            for (int i = 0; i < n; ++i) {
                long long k = 2ll * ones[i] - (n - 1);
                sumsq += k * k;
            }
            stat = static_cast<double>((sumsq - static_cast<long long>(n) * (n - 1)) / 2);
        } else if (motif_edge) {
            long long s = 0;
            for (int i = 0; i < n; ++i) s += ones[i];
            stat = static_cast<double>(s);
        } else if (motif_star) {
            long long s = 0;
            for (int i = 0; i < n; ++i) s += static_cast<long long>(ones[i]) * (ones[i] - 1);
            stat = static_cast<double>(s);
        } else if (motif_tri) {
            stat = static_cast<double>(6 * tri);
        } else {
            stat = static_cast<double>(count_subgraph(m.motif, g));
        }
        double bterm = 0.0;
        if (pm) {
            for (int i = 0; i < n; ++i) bterm += 0.5 * m.beta[i] * (2.0 * ones[i] - (n - 1));
        } else {
            for (int i = 0; i < n; ++i) bterm += m.beta[i] * ones[i];
        }
        return scale * stat + bterm;
    };

    auto toggle = [&](std::size_t idx) {
        auto [a, b] = pairs[idx];
        bool present = g.has_edge(a, b);
        if (motif_tri || generic) {
            // common-neighbor count is unaffected by the (a,b) bit itself
            int cn = 0;
            for (int k = 0; k < n; ++k)
                if (k != a && k != b && g.has_edge(a, k) && g.has_edge(b, k)) ++cn;
            tri += present ? -cn : cn;
        }
        g.set_edge(a, b, !present);
        ones[a] += present ? -1 : 1;
        ones[b] += present ? -1 : 1;
    };

    lw[0] = eval();
    for (std::uint64_t mask = 1; mask < total; ++mask) {
        // bits differing between mask-1 and mask: trailing ones of mask-1 plus
        // the bit that switches on
        std::uint64_t diff = mask ^ (mask - 1);
        while (diff) {
            std::size_t idx = static_cast<std::size_t>(std::countr_zero(diff));
            toggle(idx);
            diff &= diff - 1;
        }
        lw[mask] = eval();
    }
    return lw;
}

} // namespace

ExactDistribution exact_distribution(const Model& m, const RestrictionEvent* restriction) {
    require_small(m.n, "exact_distribution");
    std::vector<double> lw = enumerate_log_weights(m);
    const std::uint64_t total = lw.size();

    std::vector<bool> in_event(total, true);
    if (restriction) {
        bool any = false;
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            in_event[mask] = restriction->contains(Graph::from_pair_mask(m.n, mask, m.encoding));
            any = any || in_event[mask];
        }
        if (!any) throw std::invalid_argument("exact_distribution: restriction event is empty");
    }

    double mx = -std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < total; ++mask)
        if (in_event[mask]) mx = std::max(mx, lw[mask]);
    double sum = 0.0;
    for (std::uint64_t mask = 0; mask < total; ++mask)
        if (in_event[mask]) sum += std::exp(lw[mask] - mx);

    ExactDistribution d{m, mx + std::log(sum), std::vector<double>(total, 0.0), restriction != nullptr};
    for (std::uint64_t mask = 0; mask < total; ++mask)
        if (in_event[mask]) d.probs[mask] = std::exp(lw[mask] - mx) / sum;
    return d;
}

ExactMoments exact_moments(const ExactDistribution& d) {
    const int n = d.model.n;
    const std::size_t m = static_cast<std::size_t>(n) * (n - 1) / 2;
    auto pairs = all_pairs(n);
    const bool pm = d.model.encoding == Encoding::PlusMinus;

    ExactMoments mo;
    mo.edge_marginal.assign(m, 0.0);
    mo.edge_cov.assign(m * m, 0.0);
    mo.degree_mean.assign(n, 0.0);
    mo.degree_var.assign(n, 0.0);
    mo.degree_cov.assign(static_cast<std::size_t>(n) * n, 0.0);

    std::vector<double> e2(m * m, 0.0);
    std::vector<double> k2(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> ev(m);
    std::vector<double> kv(n);

    for (std::uint64_t mask = 0; mask < d.probs.size(); ++mask) {
        double p = d.probs[mask];
        if (p == 0.0) continue;
        for (std::size_t e = 0; e < m; ++e) {
            bool b = (mask >> e) & 1u;
            ev[e] = pm ? (b ? 1.0 : -1.0) : (b ? 1.0 : 0.0);
        }
        for (int i = 0; i < n; ++i) kv[i] = 0.0;
        for (std::size_t e = 0; e < m; ++e) {
            kv[pairs[e].first] += ev[e];
            kv[pairs[e].second] += ev[e];
        }
        for (std::size_t e = 0; e < m; ++e) {
            mo.edge_marginal[e] += p * ev[e];
            for (std::size_t f = 0; f < m; ++f) e2[e * m + f] += p * ev[e] * ev[f];
        }
        for (int i = 0; i < n; ++i) {
            mo.degree_mean[i] += p * kv[i];
            for (int j = 0; j < n; ++j) k2[static_cast<std::size_t>(i) * n + j] += p * kv[i] * kv[j];
        }
    }
    for (std::size_t e = 0; e < m; ++e)
        for (std::size_t f = 0; f < m; ++f)
            mo.edge_cov[e * m + f] = e2[e * m + f] - mo.edge_marginal[e] * mo.edge_marginal[f];
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            mo.degree_cov[static_cast<std::size_t>(i) * n + j] =
                k2[static_cast<std::size_t>(i) * n + j] - mo.degree_mean[i] * mo.degree_mean[j];
        }
        mo.degree_var[i] = mo.degree_cov[static_cast<std::size_t>(i) * n + i];
        mo.sum_degree_mean += mo.degree_mean[i];
    }
    return mo;
}

namespace {

double log_binom(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void next_subset(std::vector<int>& idx, int n) {
    int s = static_cast<int>(idx.size());
    int i = s - 1;
    while (i >= 0 && idx[i] == n - s + i) --i;
    if (i < 0) { idx.clear(); return; }
    ++idx[i];
    for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
}

} // namespace

LrSecondMoment lr_second_moment(int n, int s, double A, double theta, double beta0,
                                const RestrictionEvent* restriction) {
    require_small(n, "lr_second_moment");
    if (s < 1 || s > n) throw std::invalid_argument("lr_second_moment: 1 <= s <= n");

    LrSecondMoment out;

    // Direct route: Q_pi averages the alternative p.m.f. over all supports.
    ExactDistribution p0 = exact_distribution(Model::two_star_pm(n, theta, beta0), restriction);
    std::vector<double> q(p0.probs.size(), 0.0);
    std::vector<int> sup(s);
    for (int i = 0; i < s; ++i) sup[i] = i;
    std::size_t n_supports = 0;
    while (!sup.empty()) {
        AlternativeSpec alt(beta0, s, A, sup);
        ExactDistribution ps = exact_distribution(Model::two_star_pm(n, theta, make_beta(alt, n)), restriction);
        for (std::size_t i = 0; i < q.size(); ++i) q[i] += ps.probs[i];
        ++n_supports;
        next_subset(sup, n);
    }
    double el2 = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
        if (p0.probs[i] > 0.0) el2 += (q[i] / n_supports) * (q[i] / n_supports) / p0.probs[i];
    out.direct = el2;

    // Partition-function route: E_W exp(R(W)) over the hypergeometric overlap
    // W = |S1 cap S2|, with R(w) built from log Z at overlap pattern w.
    auto log_z_for = [&](const std::vector<double>& beta) {
        return exact_distribution(Model::two_star_pm(n, theta, beta), restriction).log_z;
    };
    double lz0 = log_z_for(std::vector<double>(n, beta0));
    double lzs = log_z_for(make_beta(AlternativeSpec(beta0, s, A), n));
    double acc = 0.0;
    int w_lo = std::max(0, 2 * s - n);
    for (int w = w_lo; w <= s; ++w) {
        // beta0 baseline, 2A on w vertices, A on 2(s-w) further vertices
        std::vector<double> beta(n, beta0);
        for (int i = 0; i < w; ++i) beta[i] += 2.0 * A;
        for (int i = w; i < 2 * s - w; ++i) beta[i] += A;
        double r = log_z_for(beta) + lz0 - 2.0 * lzs;
        double logp = log_binom(s, w) + log_binom(n - s, s - w) - log_binom(n, s);
        acc += std::exp(logp + r);
    }
    out.partition_route = acc;
    return out;
}

LbBoundCheck lb_bound_check(int n, int s, double A, double theta, double beta0) {
    require_small(n, "lb_bound_check");
    if (!(n > 2 * s)) throw std::invalid_argument("lb_bound_check: requires n > 2s");
    LbBoundCheck out;
    out.lhs = lr_second_moment(n, s, A, theta, beta0).direct;
    ExactMoments mo = exact_moments(exact_distribution(Model::two_star_pm(n, theta, beta0 / 2.0)));
    out.var_k1 = mo.degree_var[0];
    out.cov_k1k2 = mo.degree_cov_at(n, 0, 1);
    out.rhs = std::exp(A * A * s * s * out.cov_k1k2 +
                       (2.0 * s * s / n) * std::expm1(A * A * out.var_k1));
    out.holds = out.lhs <= out.rhs * (1.0 + 1e-9);
    return out;
}

double aux_pair_potential(double x, double y, double theta, double beta_i, double beta_j) {
    return 0.5 * theta * (x * x + y * y) - log_cosh(theta * (x + y) + 0.5 * (beta_i + beta_j));
}

double aux_joint_check(int n, double theta, const std::vector<double>& beta,
                       const std::vector<double>& grid_levels) {
    if (n < 2 || n > 3) throw std::invalid_argument("aux_joint_check: n in {2,3}");
    if (!(theta > 0.0)) throw std::invalid_argument("aux_joint_check: theta > 0");
    if (static_cast<int>(beta.size()) != n) throw std::invalid_argument("aux_joint_check: beta length != n");
    if (grid_levels.empty()) throw std::invalid_argument("aux_joint_check: empty grid");

    Model m = Model::two_star_pm(n, theta, beta);
    const std::size_t npairs = static_cast<std::size_t>(n) * (n - 1) / 2;
    const std::uint64_t total = 1ull << npairs;
    const double prec = theta * (n - 1);
    const double log_norm = 0.5 * std::log(prec / (2.0 * M_PI));

    std::vector<double> lw(total);
    std::vector<std::vector<int>> ks(total);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        Graph g = Graph::from_pair_mask(n, mask, Encoding::PlusMinus);
        lw[mask] = log_weight(g, m);
        ks[mask] = g.degrees();
    }

    std::vector<std::size_t> digit(n, 0);
    std::vector<double> phi(n);
    double ratio0 = 0.0;
    double max_dev = 0.0;
    bool first = true;
    for (;;) {
        for (int i = 0; i < n; ++i) phi[i] = grid_levels[digit[i]];
        // sum over graphs of the joint density (model p.m.f. times phi | Y)
        double smax = -std::numeric_limits<double>::infinity();
        std::vector<double> terms(total);
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            double lg = lw[mask];
            for (int i = 0; i < n; ++i) {
                double d = phi[i] - static_cast<double>(ks[mask][i]) / (n - 1);
                lg += log_norm - 0.5 * prec * d * d;
            }
            terms[mask] = lg;
            smax = std::max(smax, lg);
        }
        double ssum = 0.0;
        for (double t : terms) ssum += std::exp(t - smax);
        double log_joint_sum = smax + std::log(ssum);

        double log_f = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                log_f -= aux_pair_potential(phi[i], phi[j], theta, beta[i], beta[j]);

        double ratio = log_joint_sum - log_f;
        if (first) {
            ratio0 = ratio;
            first = false;
        } else {
            max_dev = std::max(max_dev, std::fabs(std::expm1(ratio - ratio0)));
        }
        // advance product grid
        int pos = 0;
        while (pos < n && ++digit[pos] == grid_levels.size()) digit[pos++] = 0;
        if (pos == n) break;
    }
    return max_dev;
}

} // namespace dcergm
