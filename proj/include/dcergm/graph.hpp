#pragma once
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dcergm {

enum class Encoding { ZeroOne, PlusMinus };

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Index of the unordered pair (i,j), i < j, in row-major triangular order.
inline std::size_t pair_index(int n, int i, int j) {
    return static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
}

std::vector<std::pair<int, int>> all_pairs(int n);

// Simple labeled graph on n vertices. Edges are stored twice, as adjacency
// bit rows, so neighborhood scans and common-neighbor counts are word-wide.
// PlusMinus reads a set bit as +1 and a clear bit as -1.
class Graph {
public:
    Graph() = default;
    Graph(int n, Encoding enc);

    static Graph from_pair_mask(int n, std::uint64_t mask, Encoding enc);

    int n() const { return n_; }
    Encoding encoding() const { return enc_; }
    std::size_t pair_count() const { return static_cast<std::size_t>(n_) * (n_ - 1) / 2; }

    bool has_edge(int i, int j) const {
        return (rows_[static_cast<std::size_t>(i) * words_ + (j >> 6)] >> (j & 63)) & 1u;
    }
    void set_edge(int i, int j, bool present);

    // No pair validation, branchless; hot loops only.
    void set_edge_unchecked(int i, int j, bool present) {
        std::uint64_t p = present;
        std::uint64_t& wi = rows_[static_cast<std::size_t>(i) * words_ + (j >> 6)];
        std::uint64_t& wj = rows_[static_cast<std::size_t>(j) * words_ + (i >> 6)];
        wi = (wi & ~(1ull << (j & 63))) | (p << (j & 63));
        wj = (wj & ~(1ull << (i & 63))) | (p << (i & 63));
    }

    // Adjacency-row words for vertex i (bits beyond n are zero).
    const std::uint64_t* row(int i) const { return rows_.data() + static_cast<std::size_t>(i) * words_; }
    int words_per_row() const { return words_; }

    // Number of set pair-bits at vertex i.
    int ones_degree(int i) const;

    // Degree in the native encoding: row sum of the adjacency matrix,
    // so d_i in {0..n-1} for ZeroOne and k_i in {-(n-1)..n-1} for PlusMinus.
    int degree(int i) const {
        int d = ones_degree(i);
        return enc_ == Encoding::ZeroOne ? d : 2 * d - (n_ - 1);
    }
    std::vector<int> degrees() const;

    // +1/-1 (PlusMinus) or 1/0 (ZeroOne) value of the pair (i,j).
    int edge_value(int i, int j) const {
        bool b = has_edge(i, j);
        return enc_ == Encoding::ZeroOne ? (b ? 1 : 0) : (b ? 1 : -1);
    }

    // Pair bits packed in triangular order, for enumeration and the hex form.
    std::uint64_t pair_mask() const; // requires pair_count() <= 64
    std::vector<std::uint8_t> pair_bytes() const;

    Graph relabeled(const std::vector<int>& perm) const;

    bool operator==(const Graph& o) const { return n_ == o.n_ && enc_ == o.enc_ && rows_ == o.rows_; }

    // Edge-list text format: first line n, then one "u v" line per present
    // edge with 1-based endpoints.
    std::string to_edge_list() const;
    static Graph parse_edge_list(const std::string& text, Encoding enc);

    // Compact form "n:HEX": pair bits in triangular order packed into bytes
    // (bit k of byte k/8), two lowercase hex digits per byte.
    std::string to_hex() const;
    static Graph parse_hex(const std::string& text, Encoding enc);

private:
    int n_ = 0;
    int words_ = 0;
    Encoding enc_ = Encoding::ZeroOne;
    std::vector<std::uint64_t> rows_;
};

// Fixed motif H: labeled vertex count zeta and edge list over {0..zeta-1}.
// Must be connected, zeta >= 2, no duplicate edges or self-loops.
struct SubgraphSpec {
    int zeta = 0;
    std::vector<std::pair<int, int>> edge_list;

    SubgraphSpec(int zeta_, std::vector<std::pair<int, int>> edges);

    static SubgraphSpec edge();     // K_2
    static SubgraphSpec two_star(); // K_{1,2}, path on three vertices
    static SubgraphSpec triangle(); // K_3

    bool is_edge() const { return zeta == 2 && edge_list.size() == 1; }
    bool is_two_star() const;
    bool is_triangle() const { return zeta == 3 && edge_list.size() == 3; }
    bool operator==(const SubgraphSpec& o) const { return zeta == o.zeta && edge_list == o.edge_list; }
};

} // namespace dcergm
