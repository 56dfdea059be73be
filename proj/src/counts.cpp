#include "dcergm/counts.hpp"

#include <bit>
#include <cmath>

namespace dcergm {

namespace {

int common_neighbors(const Graph& g, int i, int j) {
    const std::uint64_t* ri = g.row(i);
    const std::uint64_t* rj = g.row(j);
    int c = 0;
    for (int w = 0; w < g.words_per_row(); ++w) c += std::popcount(ri[w] & rj[w]);
    return c;
}

// Injective maps [zeta] -> [n] with all H-edges present; optionally only maps
// whose image edge set covers the pair (ei,ej).
std::uint64_t enumerate_maps(const SubgraphSpec& h, const Graph& g, int ei, int ej) {
    const int n = g.n();
    const int zeta = h.zeta;
    std::vector<int> map(zeta, -1);
    std::vector<bool> used(n, false);
    // edges incident to each H-vertex with the smaller-indexed endpoint first
    std::vector<std::vector<int>> back_edges(zeta);
    for (auto& [a, b] : h.edge_list) {
        int lo = std::min(a, b), hi = std::max(a, b);
        back_edges[hi].push_back(lo);
    }
    std::uint64_t count = 0;
    auto covers_e = [&]() {
        for (auto& [a, b] : h.edge_list) {
            int u = map[a], v = map[b];
            if ((u == ei && v == ej) || (u == ej && v == ei)) return true;
        }
        return false;
    };
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == zeta) {
            if (ei < 0 || covers_e()) ++count;
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            bool ok = true;
            for (int q : back_edges[pos])
                if (!g.has_edge(map[q], v)) { ok = false; break; }
            if (!ok) continue;
            used[v] = true;
            map[pos] = v;
            self(self, pos + 1);
            used[v] = false;
        }
    };
    rec(rec, 0);
    return count;
}

void require_countable(const SubgraphSpec& h, const Graph& g) {
    if (g.encoding() != Encoding::ZeroOne)
        throw std::invalid_argument("count_subgraph: ZeroOne encoding required");
    if (h.zeta > g.n())
        throw std::invalid_argument("count_subgraph: motif larger than graph");
}

} // namespace

std::uint64_t count_subgraph(const SubgraphSpec& h, const Graph& g) {
    require_countable(h, g);
    if (h.is_edge()) {
        std::uint64_t s = 0;
        for (int i = 0; i < g.n(); ++i) s += static_cast<std::uint64_t>(g.degree(i));
        return s;
    }
    if (h.is_two_star()) {
        std::uint64_t s = 0;
        for (int i = 0; i < g.n(); ++i) {
            std::int64_t d = g.degree(i);
            s += static_cast<std::uint64_t>(d * (d - 1)); // = 2*C(d,2)
        }
        return s;
    }
    if (h.is_triangle()) {
        std::uint64_t tri = 0;
        for (int i = 0; i < g.n(); ++i)
            for (int j = i + 1; j < g.n(); ++j)
                if (g.has_edge(i, j)) {
                    // common neighbors above j avoid double counting
                    for (int k = j + 1; k < g.n(); ++k)
                        if (g.has_edge(i, k) && g.has_edge(j, k)) ++tri;
                }
        return 6 * tri;
    }
    return enumerate_maps(h, g, -1, -1);
}

std::uint64_t count_through_edge(const SubgraphSpec& h, const Graph& g, int i, int j) {
    require_countable(h, g);
    if (i == j || i < 0 || j < 0 || i >= g.n() || j >= g.n())
        throw std::invalid_argument("count_through_edge: invalid pair");
    if (h.is_edge()) return 2;
    Graph gp = g;
    gp.set_edge(i, j, true);
    if (h.is_two_star())
        return 2 * static_cast<std::uint64_t>(gp.degree(i) + gp.degree(j) - 2);
    if (h.is_triangle())
        return 6 * static_cast<std::uint64_t>(common_neighbors(gp, i, j));
    return enumerate_maps(h, gp, i, j);
}

double count_through_edge_scaled(const SubgraphSpec& h, const Graph& g, int i, int j) {
    double ne = static_cast<double>(count_through_edge(h, g, i, j));
    return ne / std::pow(static_cast<double>(g.n()), h.zeta - 2);
}

} // namespace dcergm
