#include "dcergm/graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace dcergm {

std::vector<std::pair<int, int>> all_pairs(int n) {
    std::vector<std::pair<int, int>> ps;
    ps.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) ps.emplace_back(i, j);
    return ps;
}

Graph::Graph(int n, Encoding enc) : n_(n), enc_(enc) {
    if (n < 1) throw std::invalid_argument("Graph: n >= 1");
    words_ = (n + 63) / 64;
    rows_.assign(static_cast<std::size_t>(n) * words_, 0);
}

Graph Graph::from_pair_mask(int n, std::uint64_t mask, Encoding enc) {
    Graph g(n, enc);
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++idx)
            if ((mask >> idx) & 1u) g.set_edge(i, j, true);
    return g;
}

void Graph::set_edge(int i, int j, bool present) {
    if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_)
        throw std::invalid_argument("Graph::set_edge: invalid vertex pair");
    auto apply = [&](int a, int b) {
        std::uint64_t& w = rows_[static_cast<std::size_t>(a) * words_ + (b >> 6)];
        std::uint64_t bit = 1ull << (b & 63);
        if (present) w |= bit; else w &= ~bit;
    };
    apply(i, j);
    apply(j, i);
}

int Graph::ones_degree(int i) const {
    int d = 0;
    const std::uint64_t* r = row(i);
    for (int w = 0; w < words_; ++w) d += std::popcount(r[w]);
    return d;
}

std::vector<int> Graph::degrees() const {
    std::vector<int> ds(n_);
    for (int i = 0; i < n_; ++i) ds[i] = degree(i);
    return ds;
}

std::uint64_t Graph::pair_mask() const {
    if (pair_count() > 64) throw std::invalid_argument("Graph::pair_mask: too many pairs");
    std::uint64_t mask = 0;
    std::size_t idx = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j, ++idx)
            if (has_edge(i, j)) mask |= 1ull << idx;
    return mask;
}

std::vector<std::uint8_t> Graph::pair_bytes() const {
    std::vector<std::uint8_t> bytes((pair_count() + 7) / 8, 0);
    std::size_t idx = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j, ++idx)
            if (has_edge(i, j)) bytes[idx >> 3] |= static_cast<std::uint8_t>(1u << (idx & 7));
    return bytes;
}

Graph Graph::relabeled(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != n_) throw std::invalid_argument("relabeled: bad permutation");
    Graph g(n_, enc_);
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (has_edge(i, j)) g.set_edge(perm[i], perm[j], true);
    return g;
}

std::string Graph::to_edge_list() const {
    std::ostringstream os;
    os << n_ << "\n";
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (has_edge(i, j)) os << (i + 1) << " " << (j + 1) << "\n";
    return os.str();
}

Graph Graph::parse_edge_list(const std::string& text, Encoding enc) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    int n = -1;
    Graph g;
    while (std::getline(is, line)) {
        ++lineno;
        std::string trimmed = line;
        while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.pop_back();
        std::size_t start = 0;
        while (start < trimmed.size() && std::isspace(static_cast<unsigned char>(trimmed[start]))) ++start;
        trimmed = trimmed.substr(start);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        std::istringstream ls(trimmed);
        if (n < 0) {
            std::string extra;
            if (!(ls >> n) || n < 1 || (ls >> extra))
                throw ParseError("line " + std::to_string(lineno) + ": expected vertex count");
            g = Graph(n, enc);
            continue;
        }
        int u, v;
        std::string extra;
        if (!(ls >> u >> v) || (ls >> extra))
            throw ParseError("line " + std::to_string(lineno) + ": expected edge 'u v'");
        if (u < 1 || v < 1 || u > n || v > n || u == v)
            throw ParseError("line " + std::to_string(lineno) + ": edge endpoints out of range");
        g.set_edge(u - 1, v - 1, true);
    }
    if (n < 0) throw ParseError("line 1: empty graph file");
    return g;
}

std::string Graph::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s = std::to_string(n_) + ":";
    for (std::uint8_t b : pair_bytes()) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 15]);
    }
    return s;
}

Graph Graph::parse_hex(const std::string& text, Encoding enc) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("line 1: hex graph must be 'n:HEX'");
    int n = 0;
    try {
        n = std::stoi(text.substr(0, colon));
    } catch (...) {
        throw ParseError("line 1: bad vertex count in hex graph");
    }
    if (n < 1) throw ParseError("line 1: bad vertex count in hex graph");
    std::string hex = text.substr(colon + 1);
    while (!hex.empty() && std::isspace(static_cast<unsigned char>(hex.back()))) hex.pop_back();
    Graph g(n, enc);
    std::size_t m = g.pair_count();
    if (hex.size() != 2 * ((m + 7) / 8))
        throw ParseError("line 1: hex graph has wrong length");
    auto nibble = [&](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw ParseError("line 1: invalid hex digit");
    };
    auto pairs = all_pairs(n);
    for (std::size_t idx = 0; idx < m; ++idx) {
        std::uint8_t byte = static_cast<std::uint8_t>((nibble(hex[2 * (idx >> 3)]) << 4) | nibble(hex[2 * (idx >> 3) + 1]));
        if ((byte >> (idx & 7)) & 1u) g.set_edge(pairs[idx].first, pairs[idx].second, true);
    }
    return g;
}

SubgraphSpec::SubgraphSpec(int zeta_, std::vector<std::pair<int, int>> edges)
    : zeta(zeta_), edge_list(std::move(edges)) {
    if (zeta < 2) throw std::invalid_argument("SubgraphSpec: zeta >= 2");
    std::vector<std::vector<int>> adj(zeta);
    std::vector<std::pair<int, int>> seen;
    for (auto& [a, b] : edge_list) {
        if (a == b || a < 0 || b < 0 || a >= zeta || b >= zeta)
            throw std::invalid_argument("SubgraphSpec: bad edge");
        auto key = std::minmax(a, b);
        if (std::find(seen.begin(), seen.end(), std::pair<int, int>(key.first, key.second)) != seen.end())
            throw std::invalid_argument("SubgraphSpec: duplicate edge");
        seen.emplace_back(key.first, key.second);
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    // connectivity
    std::vector<bool> vis(zeta, false);
    std::vector<int> stack{0};
    vis[0] = true;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : adj[v])
            if (!vis[u]) { vis[u] = true; ++reached; stack.push_back(u); }
    }
    if (reached != zeta) throw std::invalid_argument("SubgraphSpec: motif must be connected");
}

SubgraphSpec SubgraphSpec::edge() { return SubgraphSpec(2, {{0, 1}}); }
SubgraphSpec SubgraphSpec::two_star() { return SubgraphSpec(3, {{0, 1}, {1, 2}}); }
SubgraphSpec SubgraphSpec::triangle() { return SubgraphSpec(3, {{0, 1}, {1, 2}, {0, 2}}); }

bool SubgraphSpec::is_two_star() const {
    if (zeta != 3 || edge_list.size() != 2) return false;
    // two edges sharing exactly one vertex
    auto [a, b] = edge_list[0];
    auto [c, d] = edge_list[1];
    int shared = (a == c) + (a == d) + (b == c) + (b == d);
    return shared == 1;
}

} // namespace dcergm
