#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace suppnet {

/// 64-bit mixer used to derive independent RNG streams from a base seed
/// plus an arbitrary list of tags (generation index, member index, ...).
/// All randomness in the library flows through streams derived this way,
/// so parallel and serial execution orders produce identical results.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed) { return splitmix64(seed); }

template <typename... Tags>
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, Tags... rest) {
    return derive_seed(splitmix64(seed ^ splitmix64(tag + 0x632be59bd9b4e019ULL)), rest...);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

/// Uniform integer in [0, n). Rejection sampling on the raw 64-bit output;
/// unlike std::uniform_int_distribution the result does not depend on the
/// standard library implementation.
template <typename Gen>
std::uint64_t rand_index(Gen& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = rng();
    while (v >= limit) v = rng();
    return v % n;
}

/// Uniform real in [0, 1) with 53 random mantissa bits.
template <typename Gen>
double rand_real01(Gen& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename Gen, typename T>
void shuffle_vec(Gen& rng, std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rand_index(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

/// k distinct indices drawn uniformly from [0, n), in random order
/// (partial Fisher-Yates over an index vector).
template <typename Gen>
std::vector<std::size_t> sample_indices(Gen& rng, std::size_t n, std::size_t k) {
    if (k > n) k = n;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rand_index(rng, n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace suppnet
