#pragma once
#include <cstdint>

#include "dcergm/graph.hpp"

namespace dcergm {

// N(H,G): number of injective maps from the vertices of H into G whose image
// contains every edge of H. Closed forms for K_2, K_{1,2}, K_3; brute-force
// enumeration otherwise. Requires ZeroOne encoding and zeta <= n.
std::uint64_t count_subgraph(const SubgraphSpec& h, const Graph& g);

// N_e(H,G): copies of H through the pair e, counted in g with e forced
// present (conditional-probability convention).
std::uint64_t count_through_edge(const SubgraphSpec& h, const Graph& g, int i, int j);

// t_e(H,G) = N_e(H,G) / n^{zeta-2}.
double count_through_edge_scaled(const SubgraphSpec& h, const Graph& g, int i, int j);

} // namespace dcergm
