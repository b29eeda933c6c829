#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "suppnet/model.hpp"
#include "suppnet/parallel.hpp"
#include "suppnet/rng.hpp"
#include "suppnet/stats.hpp"

namespace suppnet {

/// Raised when a constrained randomization (preserve_demand) cannot find an
/// admissible sample within its attempt bound.
struct SamplingFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Triad classification
//
// A directed 3-node subgraph is encoded as a 6-bit word over the off-diagonal
// adjacency entries (0,1),(0,2),(1,0),(1,2),(2,0),(2,1), most significant
// first. The canonical form of a triad is the minimum code over all 6 node
// permutations. Of the 64 codes, 13 canonical classes have a connected
// underlying undirected graph; their canonical codes sorted ascending are
// mapped to class ids 1..13, with one transposition applied so that the
// feed-forward loop lands at id 7. The resulting table is mirrored in
// data/triad_classes.json.
// ---------------------------------------------------------------------------

namespace triads {

constexpr int kClassCount = 13;
constexpr int kDisconnected = 0;
constexpr int kFeedForwardLoop = 7;
constexpr int kThreeCycle = 9;

namespace detail {

constexpr std::array<std::array<int, 3>, 6> kPerms = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

constexpr unsigned encode(const bool m[3][3]) {
    return (static_cast<unsigned>(m[0][1]) << 5) | (static_cast<unsigned>(m[0][2]) << 4) |
           (static_cast<unsigned>(m[1][0]) << 3) | (static_cast<unsigned>(m[1][2]) << 2) |
           (static_cast<unsigned>(m[2][0]) << 1) | static_cast<unsigned>(m[2][1]);
}

constexpr void decode(unsigned code, bool m[3][3]) {
    m[0][0] = m[1][1] = m[2][2] = false;
    m[0][1] = (code >> 5) & 1u;
    m[0][2] = (code >> 4) & 1u;
    m[1][0] = (code >> 3) & 1u;
    m[1][2] = (code >> 2) & 1u;
    m[2][0] = (code >> 1) & 1u;
    m[2][1] = code & 1u;
}

constexpr unsigned canonical_code(unsigned code) {
    bool m[3][3] = {};
    decode(code, m);
    unsigned best = 64;
    for (const auto& p : kPerms) {
        bool q[3][3] = {};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) q[i][j] = m[p[i]][p[j]];
        const unsigned c = encode(q);
        if (c < best) best = c;
    }
    return best;
}

constexpr bool connected(unsigned code) {
    bool m[3][3] = {};
    decode(code, m);
    const int e01 = (m[0][1] || m[1][0]) ? 1 : 0;
    const int e02 = (m[0][2] || m[2][0]) ? 1 : 0;
    const int e12 = (m[1][2] || m[2][1]) ? 1 : 0;
    // Three nodes are connected iff at least two undirected pairs are linked.
    return e01 + e02 + e12 >= 2;
}

/// Canonical codes in published class order (ids 1..13). Ascending order of
/// the 13 canonical codes, with the feed-forward loop (code 11) transposed
/// into slot 7 (swapping with code 21).
constexpr std::array<unsigned, kClassCount> kClassCodes = {
    3, 6, 7, 10, 21, 15, 11, 23, 25, 27, 30, 31, 63};

constexpr std::array<std::uint8_t, 64> build_code_class() {
    std::array<std::uint8_t, 64> table{};
    for (unsigned code = 0; code < 64; ++code) {
        table[code] = 0;
        if (!connected(code)) continue;
        const unsigned canon = canonical_code(code);
        for (int k = 0; k < kClassCount; ++k)
            if (kClassCodes[static_cast<std::size_t>(k)] == canon)
                table[code] = static_cast<std::uint8_t>(k + 1);
    }
    return table;
}

constexpr std::array<std::uint8_t, 64> kCodeClass = build_code_class();

static_assert(kCodeClass[0b001011] == kFeedForwardLoop);
static_assert(kCodeClass[0b011001] == kThreeCycle);
static_assert(kCodeClass[0b100000] == 0);  // single edge: disconnected triple

}  // namespace detail

struct ClassInfo {
    int id;
    unsigned canonical_code;
    const char* name;
    std::array<Edge, 6> edges;  // representative triad on nodes {0,1,2}
    int edge_count;
};

/// Published id -> topology table (also shipped as data/triad_classes.json).
inline const std::array<ClassInfo, kClassCount>& class_table() {
    static const std::array<ClassInfo, kClassCount> table = [] {
        constexpr const char* names[kClassCount] = {
            "out_star",         "path",           "mutual_out",  "in_star",
            "mutual_in",        "mutual_two_out", "feed_forward_loop",
            "double_mutual",    "three_cycle",    "mutual_path", "mutual_two_in",
            "double_mutual_single", "complete"};
        std::array<ClassInfo, kClassCount> t{};
        constexpr std::array<std::pair<int, int>, 6> positions = {{
            {0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}};
        for (int k = 0; k < kClassCount; ++k) {
            ClassInfo& info = t[static_cast<std::size_t>(k)];
            info.id = k + 1;
            info.canonical_code = detail::kClassCodes[static_cast<std::size_t>(k)];
            info.name = names[k];
            info.edge_count = 0;
            for (int b = 0; b < 6; ++b) {
                if ((info.canonical_code >> (5 - b)) & 1u) {
                    info.edges[static_cast<std::size_t>(info.edge_count++)] =
                        Edge{positions[static_cast<std::size_t>(b)].first,
                             positions[static_cast<std::size_t>(b)].second};
                }
            }
        }
        return t;
    }();
    return table;
}

}  // namespace triads

/// Class id in 1..13 of a 3-node adjacency matrix (zero diagonal), or 0 when
/// the underlying undirected graph is disconnected.
inline int classify_triad(const std::array<std::array<bool, 3>, 3>& m) {
    for (int i = 0; i < 3; ++i)
        if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)])
            throw std::invalid_argument("triad adjacency must have a zero diagonal");
    const unsigned code = (static_cast<unsigned>(m[0][1]) << 5) | (static_cast<unsigned>(m[0][2]) << 4) |
                          (static_cast<unsigned>(m[1][0]) << 3) | (static_cast<unsigned>(m[1][2]) << 2) |
                          (static_cast<unsigned>(m[2][0]) << 1) | static_cast<unsigned>(m[2][1]);
    return triads::detail::kCodeClass[code];
}

struct TriadCensus {
    std::array<std::int64_t, triads::kClassCount> counts{};

    std::int64_t count(int class_id) const { return counts[static_cast<std::size_t>(class_id - 1)]; }
    std::int64_t total() const {
        std::int64_t s = 0;
        for (auto c : counts) s += c;
        return s;
    }
    bool operator==(const TriadCensus&) const = default;
};

namespace detail {

/// Row-major adjacency bitset; words_per_row 64-bit words per node.
struct AdjBits {
    explicit AdjBits(const Network& net)
        : n(net.setup().size()), words(static_cast<std::size_t>(n + 63) / 64),
          bits(static_cast<std::size_t>(n) * words, 0) {
        for (const Edge& e : net.edges()) set(e.from, e.to);
    }
    void set(int u, int v) {
        bits[static_cast<std::size_t>(u) * words + static_cast<std::size_t>(v) / 64] |=
            (std::uint64_t{1} << (static_cast<std::size_t>(v) % 64));
    }
    bool get(int u, int v) const {
        return (bits[static_cast<std::size_t>(u) * words + static_cast<std::size_t>(v) / 64] >>
                (static_cast<std::size_t>(v) % 64)) & 1u;
    }
    int n;
    std::size_t words;
    std::vector<std::uint64_t> bits;
};

}  // namespace detail

/// Counts of the 13 connected directed triad classes over all C(N,3) node
/// triples. O(N^3).
inline TriadCensus triad_census(const Network& net) {
    TriadCensus census;
    const int n = net.setup().size();
    if (n < 3) return census;
    detail::AdjBits adj(net);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const unsigned uv = (static_cast<unsigned>(adj.get(u, v)) << 5) |
                                (static_cast<unsigned>(adj.get(v, u)) << 3);
            for (int w = v + 1; w < n; ++w) {
                const unsigned code = uv | (static_cast<unsigned>(adj.get(u, w)) << 4) |
                                      (static_cast<unsigned>(adj.get(v, w)) << 2) |
                                      (static_cast<unsigned>(adj.get(w, u)) << 1) |
                                      static_cast<unsigned>(adj.get(w, v));
                const int cls = triads::detail::kCodeClass[code];
                if (cls != 0) ++census.counts[static_cast<std::size_t>(cls - 1)];
            }
        }
    }
    return census;
}

// ---------------------------------------------------------------------------
// Null models
// ---------------------------------------------------------------------------

enum class NullModel { PreserveMutual, IgnoreMutual, PreserveDemand };

inline const char* to_string(NullModel v) {
    switch (v) {
        case NullModel::PreserveMutual: return "mutual";
        case NullModel::IgnoreMutual: return "nomutual";
        case NullModel::PreserveDemand: return "demand";
    }
    return "mutual";
}

inline NullModel null_model_from_string(const std::string& s) {
    if (s == "mutual") return NullModel::PreserveMutual;
    if (s == "nomutual") return NullModel::IgnoreMutual;
    if (s == "demand") return NullModel::PreserveDemand;
    throw std::invalid_argument("unknown null model: '" + s + "'");
}

struct NullModelConfig {
    NullModel variant = NullModel::PreserveMutual;
    int ensemble_size = 500;
    int swaps_per_edge = 10;
    std::uint64_t seed = 0;
    double z_cap = 10.0;          // z magnitude when the ensemble variance is zero
    int demand_retry_limit = 100; // whole-randomization retries for preserve_demand

    void validate() const {
        if (ensemble_size < 10) throw std::invalid_argument("ensemble_size must be >= 10");
        if (swaps_per_edge < 1) throw std::invalid_argument("swaps_per_edge must be >= 1");
    }
};

namespace detail {

struct EdgeSet {
    std::unordered_set<std::uint64_t> set;

    static std::uint64_t key(int u, int v) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
               static_cast<std::uint32_t>(v);
    }
    bool contains(int u, int v) const { return set.count(key(u, v)) != 0; }
    void insert(int u, int v) { set.insert(key(u, v)); }
    void erase(int u, int v) { set.erase(key(u, v)); }
};

/// Directed double-edge switches (a->b, c->d) => (a->d, c->b) preserving all
/// in- and out-degrees. forbid_new_mutual additionally rejects switches that
/// would create an anti-parallel partner for a previously single edge.
inline void switch_edges(std::vector<Edge>& edges, EdgeSet& all, Rng& rng, int attempts,
                         bool forbid_new_mutual) {
    const std::size_t m = edges.size();
    if (m < 2) return;
    for (int t = 0; t < attempts; ++t) {
        const std::size_t i = static_cast<std::size_t>(rand_index(rng, m));
        const std::size_t j = static_cast<std::size_t>(rand_index(rng, m));
        if (i == j) continue;
        const Edge e1 = edges[i], e2 = edges[j];
        if (e1.from == e2.to || e2.from == e1.to) continue;  // would create a self-loop
        if (all.contains(e1.from, e2.to) || all.contains(e2.from, e1.to)) continue;
        if (forbid_new_mutual &&
            (all.contains(e2.to, e1.from) || all.contains(e1.to, e2.from))) continue;
        all.erase(e1.from, e1.to);
        all.erase(e2.from, e2.to);
        all.insert(e1.from, e2.to);
        all.insert(e2.from, e1.to);
        edges[i] = Edge{e1.from, e2.to};
        edges[j] = Edge{e2.from, e1.to};
    }
}

/// Switches over mutual pairs treated as undirected edges; both endpoints of
/// each new pair get both directions. Preserves the mutual-pair count and all
/// degrees.
inline void switch_mutual_pairs(std::vector<std::pair<int, int>>& pairs, EdgeSet& all, Rng& rng,
                                int attempts) {
    const std::size_t m = pairs.size();
    if (m < 2) return;
    for (int t = 0; t < attempts; ++t) {
        const std::size_t i = static_cast<std::size_t>(rand_index(rng, m));
        const std::size_t j = static_cast<std::size_t>(rand_index(rng, m));
        if (i == j) continue;
        auto [a, b] = pairs[i];
        auto [c, d] = pairs[j];
        if (a == c || a == d || b == c || b == d) continue;
        if (rand_index(rng, 2) == 1) std::swap(c, d);
        // proposed pairs {a,c} and {b,d}
        if (all.contains(a, c) || all.contains(c, a) || all.contains(b, d) || all.contains(d, b))
            continue;
        for (auto [u, v] : {pairs[i], pairs[j]}) {
            all.erase(u, v);
            all.erase(v, u);
        }
        pairs[i] = {a, c};
        pairs[j] = {b, d};
        for (auto [u, v] : {pairs[i], pairs[j]}) {
            all.insert(u, v);
            all.insert(v, u);
        }
    }
}

inline Network randomize_once(const Network& net, const NullModelConfig& cfg, std::uint64_t seed) {
    const int m = net.edge_count();
    Rng rng = make_rng(seed);
    EdgeSet all;
    for (const Edge& e : net.edges()) all.insert(e.from, e.to);
    const int attempts_total = cfg.swaps_per_edge * m;

    if (cfg.variant == NullModel::PreserveMutual) {
        std::vector<std::pair<int, int>> mutual;
        std::vector<Edge> single;
        for (const Edge& e : net.edges()) {
            if (net.contains(Edge{e.to, e.from})) {
                if (e.from < e.to) mutual.push_back({e.from, e.to});
            } else {
                single.push_back(e);
            }
        }
        const std::size_t units = single.size() + mutual.size();
        for (int t = 0; t < attempts_total && units > 0; ++t) {
            if (rand_index(rng, units) < single.size())
                switch_edges(single, all, rng, 1, /*forbid_new_mutual=*/true);
            else
                switch_mutual_pairs(mutual, all, rng, 1);
        }
        std::vector<Edge> edges = single;
        for (auto [u, v] : mutual) {
            edges.push_back(Edge{u, v});
            edges.push_back(Edge{v, u});
        }
        return Network(net.setup_ptr(), std::move(edges));
    }

    std::vector<Edge> edges = net.edges();
    switch_edges(edges, all, rng, attempts_total, /*forbid_new_mutual=*/false);
    return Network(net.setup_ptr(), std::move(edges));
}

inline int satisfied_count(const Network& net) {
    OutAdjacency adj(net);
    return satisfied_demanders(net.setup(), adj);
}

}  // namespace detail

/// One randomized copy of `net` under the configured null model, seeded from
/// `seed` (cfg.seed when omitted). All variants preserve every node's in- and
/// out-degree; preserve_mutual additionally keeps the mutual-pair count, and
/// preserve_demand resamples until demand satisfaction matches the original.
inline Network randomize(const Network& net, const NullModelConfig& cfg, std::uint64_t seed) {
    if (net.edge_count() < 2) throw std::invalid_argument("randomize requires at least 2 edges");
    if (cfg.variant != NullModel::PreserveDemand) return detail::randomize_once(net, cfg, seed);

    NullModelConfig inner = cfg;
    inner.variant = NullModel::IgnoreMutual;
    const int original = detail::satisfied_count(net);
    for (int attempt = 0; attempt < cfg.demand_retry_limit; ++attempt) {
        Network candidate = detail::randomize_once(net, inner, derive_seed(seed, 0xd311, static_cast<std::uint64_t>(attempt)));
        if (detail::satisfied_count(candidate) == original) return candidate;
    }
    throw SamplingFailure("preserve_demand: no sample with matching demand satisfaction within " +
                          std::to_string(cfg.demand_retry_limit) + " attempts");
}

inline Network randomize(const Network& net, const NullModelConfig& cfg) {
    return randomize(net, cfg, cfg.seed);
}

inline std::size_t mutual_pair_count(const Network& net) {
    std::size_t count = 0;
    for (const Edge& e : net.edges())
        if (e.from < e.to && net.contains(Edge{e.to, e.from})) ++count;
    return count;
}

// ---------------------------------------------------------------------------
// Signatures
// ---------------------------------------------------------------------------

/// Per-class z-scores of the census against a null-model ensemble, plus the
/// unit-normalized significance profile sp = z / ||z||.
struct MotifSignature {
    std::array<double, triads::kClassCount> z{};
    std::array<double, triads::kClassCount> sp{};
    double sigma = std::numeric_limits<double>::quiet_NaN();
    int ensemble_size = 0;
    NullModel null_model = NullModel::PreserveMutual;
};

/// Reference z-score pattern the signature strength is measured against.
/// Always loaded from configuration (see data/target_signature.json); the
/// feed-forward-loop component (7) must be strictly positive.
struct TargetSignature {
    std::array<double, triads::kClassCount> values{};

    void validate() const {
        bool all_equal = true;
        for (double v : values) {
            if (!std::isfinite(v)) throw std::invalid_argument("target signature has a non-finite value");
            if (v != values[0]) all_equal = false;
        }
        if (all_equal) throw std::invalid_argument("target signature components must not be all equal");
        if (values[triads::kFeedForwardLoop - 1] <= 0.0)
            throw std::invalid_argument("target signature component 7 (feed-forward loop) must be positive");
    }
};

inline MotifSignature motif_signature(const Network& net, const NullModelConfig& cfg) {
    cfg.validate();
    if (net.setup().size() < 3) throw std::invalid_argument("motif signature requires N >= 3");
    if (net.edge_count() < 2) throw std::invalid_argument("motif signature requires M >= 2");

    const TriadCensus real = triad_census(net);
    const int k = cfg.ensemble_size;
    std::vector<TriadCensus> ensemble(static_cast<std::size_t>(k));
    parallel_for(static_cast<std::size_t>(k), [&](std::size_t i) {
        ensemble[i] = triad_census(
            randomize(net, cfg, derive_seed(cfg.seed, 0xe45e, static_cast<std::uint64_t>(i))));
    });

    MotifSignature sig;
    sig.ensemble_size = k;
    sig.null_model = cfg.variant;
    double norm_sq = 0.0;
    for (int c = 0; c < triads::kClassCount; ++c) {
        std::int64_t sum = 0, lo = ensemble[0].counts[static_cast<std::size_t>(c)], hi = lo;
        double sumsq = 0.0;
        for (const TriadCensus& e : ensemble) {
            const std::int64_t x = e.counts[static_cast<std::size_t>(c)];
            sum += x;
            sumsq += static_cast<double>(x) * static_cast<double>(x);
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        const double mean = static_cast<double>(sum) / static_cast<double>(k);
        const std::int64_t observed = real.counts[static_cast<std::size_t>(c)];
        double z;
        if (lo == hi) {
            // Degenerate ensemble: variance is exactly zero.
            z = (observed == lo) ? 0.0
                                 : (observed > lo ? cfg.z_cap : -cfg.z_cap);
        } else {
            const double var = std::max(0.0, sumsq / static_cast<double>(k) - mean * mean);
            z = (static_cast<double>(observed) - mean) / std::sqrt(var);
        }
        sig.z[static_cast<std::size_t>(c)] = z;
        norm_sq += z * z;
    }
    if (norm_sq > 0.0) {
        const double norm = std::sqrt(norm_sq);
        for (int c = 0; c < triads::kClassCount; ++c)
            sig.sp[static_cast<std::size_t>(c)] = sig.z[static_cast<std::size_t>(c)] / norm;
    }
    return sig;
}

/// Pearson correlation between the significance profile and the target
/// pattern; 0 when the profile is degenerate (zero or constant).
inline double signature_strength(const MotifSignature& sig, const TargetSignature& target) {
    target.validate();
    const double rho = pearson(std::span<const double>(sig.sp), std::span<const double>(target.values));
    return std::isfinite(rho) ? rho : 0.0;
}

}  // namespace suppnet
