#pragma once
#include <cstdint>
#include <initializer_list>
#include <random>

namespace dcergm {

// splitmix64, used only to spread seeds; chains themselves run mt19937_64.
inline std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Derive an independent stream seed from a master seed plus coordinate tags
// (replication index, cell coordinates, ...). Streams for distinct tag tuples
// never share state, so results do not depend on thread scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    for (std::uint64_t t : tags) {
        s ^= t + 0x632be59bd9b4e019ull + (h << 6) + (h >> 2);
        h = splitmix64(s);
    }
    return h;
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
    return Rng(derive_seed(master, tags));
}

// Uniform double in [0,1) from the top 53 bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace dcergm
