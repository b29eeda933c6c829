#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <fstream>
#include <set>
#include <vector>

#include <json.hpp>

#include "suppnet/evolver.hpp"
#include "suppnet/io.hpp"
#include "suppnet/model.hpp"
#include "suppnet/motifs.hpp"

using namespace suppnet;

namespace {

const std::string kDataDir = SUPPNET_DATA_DIR;

using Mat = std::array<std::array<bool, 3>, 3>;

// Reference classifier: match the input against the published representative
// edge sets by trying all 6 relabelings. Shares no code with the library's
// canonical-code table.
struct ReferenceClasses {
    std::vector<std::set<std::pair<int, int>>> edge_sets;  // index = class id - 1
    std::vector<std::string> names;

    ReferenceClasses() {
        std::ifstream in(kDataDir + "/triad_classes.json");
        REQUIRE(in.good());
        const nlohmann::json doc = nlohmann::json::parse(in);
        for (const auto& cls : doc["classes"]) {
            std::set<std::pair<int, int>> edges;
            for (const auto& e : cls["edges"]) edges.insert({e[0].get<int>(), e[1].get<int>()});
            edge_sets.push_back(std::move(edges));
            names.push_back(cls["name"].get<std::string>());
        }
    }

    int classify(const Mat& m) const {
        static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        std::set<std::pair<int, int>> input;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j && m[i][j]) input.insert({i, j});
        // connectivity of the underlying undirected graph
        int linked = 0;
        for (auto [a, b] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}})
            if (m[a][b] || m[b][a]) ++linked;
        if (linked < 2) return 0;
        for (std::size_t cls = 0; cls < edge_sets.size(); ++cls) {
            for (const auto& p : perms) {
                std::set<std::pair<int, int>> mapped;
                for (auto [u, v] : input) mapped.insert({p[u], p[v]});
                if (mapped == edge_sets[cls]) return static_cast<int>(cls) + 1;
            }
        }
        return -1;  // unreachable for connected triads
    }
};

const ReferenceClasses& reference() {
    static ReferenceClasses ref;
    return ref;
}

Mat mat_from_edges(const std::vector<std::pair<int, int>>& edges) {
    Mat m{};
    for (auto [u, v] : edges) m[u][v] = true;
    return m;
}

TriadCensus oracle_census(const Network& net) {
    TriadCensus census;
    const int n = net.setup().size();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            for (int w = v + 1; w < n; ++w) {
                Mat m{};
                const int ids[3] = {u, v, w};
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        if (i != j) m[i][j] = net.contains(Edge{ids[i], ids[j]});
                const int cls = reference().classify(m);
                if (cls > 0) ++census.counts[cls - 1];
            }
    return census;
}

std::pair<std::vector<int>, std::vector<int>> degree_sequences(const Network& net) {
    std::vector<int> in(net.setup().size(), 0), out(net.setup().size(), 0);
    for (const Edge& e : net.edges()) {
        ++out[e.from];
        ++in[e.to];
    }
    return {in, out};
}

}  // namespace

TEST_CASE("classify_triad pins the feed-forward loop to class 7") {
    REQUIRE(classify_triad(mat_from_edges({{0, 1}, {0, 2}, {1, 2}})) == 7);
    REQUIRE(triads::kFeedForwardLoop == 7);
    REQUIRE(classify_triad(mat_from_edges({{0, 1}, {1, 2}, {2, 0}})) == triads::kThreeCycle);
    REQUIRE(classify_triad(mat_from_edges({{0, 1}})) == 0);
    REQUIRE(classify_triad(mat_from_edges({})) == 0);
    Mat diag{};
    diag[1][1] = true;
    REQUIRE_THROWS_AS(classify_triad(diag), std::invalid_argument);
}

TEST_CASE("classification is isomorphism invariant") {
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    const std::vector<std::pair<int, int>> path = {{0, 1}, {1, 2}};
    const int expected = classify_triad(mat_from_edges(path));
    for (const auto& p : perms) {
        std::vector<std::pair<int, int>> relabeled;
        for (auto [u, v] : path) relabeled.push_back({p[u], p[v]});
        REQUIRE(classify_triad(mat_from_edges(relabeled)) == expected);
    }
}

TEST_CASE("classify_triad agrees with the reference classifier on all 64 triads") {
    for (unsigned code = 0; code < 64; ++code) {
        Mat m{};
        m[0][1] = (code >> 5) & 1u;
        m[0][2] = (code >> 4) & 1u;
        m[1][0] = (code >> 3) & 1u;
        m[1][2] = (code >> 2) & 1u;
        m[2][0] = (code >> 1) & 1u;
        m[2][1] = code & 1u;
        INFO("code " << code);
        REQUIRE(classify_triad(m) == reference().classify(m));
    }
}

TEST_CASE("published class table matches the shipped data file") {
    std::ifstream in(kDataDir + "/triad_classes.json");
    const nlohmann::json doc = nlohmann::json::parse(in);
    const auto& table = triads::class_table();
    REQUIRE(doc["classes"].size() == table.size());
    for (std::size_t k = 0; k < table.size(); ++k) {
        const auto& jcls = doc["classes"][k];
        REQUIRE(jcls["id"].get<int>() == table[k].id);
        REQUIRE(jcls["canonical_code"].get<unsigned>() == table[k].canonical_code);
        REQUIRE(jcls["name"].get<std::string>() == table[k].name);
        REQUIRE(jcls["edges"].size() == static_cast<std::size_t>(table[k].edge_count));
        for (int e = 0; e < table[k].edge_count; ++e) {
            REQUIRE(jcls["edges"][e][0].get<int>() == table[k].edges[e].from);
            REQUIRE(jcls["edges"][e][1].get<int>() == table[k].edges[e].to);
        }
    }
}

TEST_CASE("triad census counts single motifs and degenerate cases") {
    auto s = std::make_shared<Setup>(generate_setup(3, 1, 1, 5));
    SECTION("empty network") {
        const TriadCensus c = triad_census(Network(s, {}));
        REQUIRE(c.total() == 0);
    }
    SECTION("single feed-forward loop") {
        const TriadCensus c = triad_census(Network(s, {{0, 1}, {0, 2}, {1, 2}}));
        REQUIRE(c.count(7) == 1);
        REQUIRE(c.total() == 1);
    }
    SECTION("fewer than 3 nodes") {
        auto tiny = std::make_shared<Setup>(generate_setup(2, 1, 1, 5));
        REQUIRE(triad_census(Network(tiny, {{0, 1}})).total() == 0);
    }
}

TEST_CASE("triad census equals the brute-force oracle on random networks") {
    Rng rng = make_rng(31415);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 3 + static_cast<int>(rand_index(rng, 8));
        auto setup = std::make_shared<Setup>(generate_setup(n, 1, std::max(1, n / 2), rng()));
        const int max_m = std::min(20, n * (n - 1));
        const Network net = random_network(setup, 2 + static_cast<int>(rand_index(rng, max_m - 1)),
                                           std::nullopt, rng());
        REQUIRE(triad_census(net) == oracle_census(net));
    }
}

TEST_CASE("census is invariant under node relabeling") {
    Rng rng = make_rng(99);
    auto setup = std::make_shared<Setup>(generate_setup(8, 1, 4, 17));
    const Network net = random_network(setup, 12, std::nullopt, 3);

    std::vector<int> perm(8);
    std::iota(perm.begin(), perm.end(), 0);
    shuffle_vec(rng, perm);
    Setup permuted;
    permuted.nodes.resize(8);
    for (int i = 0; i < 8; ++i) {
        Node n = setup->nodes[i];
        n.id = perm[i];
        permuted.nodes[perm[i]] = n;
    }
    std::vector<Edge> edges;
    for (const Edge& e : net.edges()) edges.push_back({perm[e.from], perm[e.to]});
    const Network relabeled(std::make_shared<Setup>(std::move(permuted)), std::move(edges));
    REQUIRE(triad_census(net) == triad_census(relabeled));
}

TEST_CASE("randomize preserves degree sequences in every variant") {
    auto setup = std::make_shared<Setup>(generate_setup(20, 1, 10, 4242));
    // Seed network with guaranteed mutual pairs.
    Network base = random_network(setup, 30, std::nullopt, 1);
    std::vector<Edge> edges = base.edges();
    int added = 0;
    for (const Edge& e : base.edges()) {
        if (added >= 4) break;
        if (!base.contains(Edge{e.to, e.from})) {
            edges.push_back({e.to, e.from});
            ++added;
        }
    }
    base = Network(setup, std::move(edges));
    const auto [in0, out0] = degree_sequences(base);
    const std::size_t mutual0 = mutual_pair_count(base);
    REQUIRE(mutual0 >= 4);

    for (NullModel variant :
         {NullModel::PreserveMutual, NullModel::IgnoreMutual, NullModel::PreserveDemand}) {
        NullModelConfig cfg;
        cfg.variant = variant;
        cfg.ensemble_size = 10;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const Network r = randomize(base, cfg, seed);
            const auto [in1, out1] = degree_sequences(r);
            REQUIRE(in1 == in0);
            REQUIRE(out1 == out0);
            if (variant == NullModel::PreserveMutual)
                REQUIRE(mutual_pair_count(r) == mutual0);
            if (variant == NullModel::PreserveDemand)
                REQUIRE(demand_satisfaction(r) == demand_satisfaction(base));
        }
    }
    REQUIRE_THROWS_AS(randomize(Network(setup, {{0, 1}}), NullModelConfig{}, 1),
                      std::invalid_argument);
}

TEST_CASE("preserve_demand reports a sampling failure when the filter is unsatisfiable") {
    // This base network's demand satisfaction is far below what its degree
    // sequence typically produces, so the rejection filter cannot succeed.
    auto setup = std::make_shared<Setup>(generate_setup(20, 1, 10, 4242));
    Network base = random_network(setup, 30, std::nullopt, 9);
    NullModelConfig cfg;
    cfg.variant = NullModel::PreserveDemand;
    cfg.demand_retry_limit = 8;
    REQUIRE_THROWS_AS(randomize(base, cfg, 5), SamplingFailure);
    REQUIRE_THROWS_AS(motif_signature(base, cfg), SamplingFailure);
}

TEST_CASE("motif signature z-scores against a degenerate ensemble are zero") {
    // Two edges out of one producer cannot be switched without collisions, so
    // every ensemble member equals the original network.
    auto s = std::make_shared<Setup>(generate_setup(3, 1, 2, 8));
    const Network net(s, {{0, 1}, {0, 2}});
    NullModelConfig cfg;
    cfg.variant = NullModel::IgnoreMutual;
    cfg.ensemble_size = 25;
    const MotifSignature sig = motif_signature(net, cfg);
    for (double z : sig.z) REQUIRE(z == 0.0);
    for (double sp : sig.sp) REQUIRE(sp == 0.0);
}

TEST_CASE("motif signature matches a reference that materializes the ensemble") {
    auto setup = std::make_shared<Setup>(generate_setup(10, 1, 5, 2718));
    const Network net = random_network(setup, 14, std::nullopt, 6);
    NullModelConfig cfg;
    cfg.ensemble_size = 40;
    cfg.seed = 123;

    const MotifSignature sig = motif_signature(net, cfg);

    // The ensemble member k is seeded as derive_seed(cfg.seed, 0xe45e, k);
    // rebuild it and recompute every z from scratch with the oracle census.
    const TriadCensus real = oracle_census(net);
    for (int c = 0; c < triads::kClassCount; ++c) {
        std::vector<double> counts;
        for (int k = 0; k < cfg.ensemble_size; ++k) {
            const Network member =
                randomize(net, cfg, derive_seed(cfg.seed, 0xe45e, static_cast<std::uint64_t>(k)));
            counts.push_back(static_cast<double>(oracle_census(member).counts[c]));
        }
        double mean = 0.0;
        for (double x : counts) mean += x;
        mean /= static_cast<double>(counts.size());
        double var = 0.0;
        for (double x : counts) var += (x - mean) * (x - mean);
        var /= static_cast<double>(counts.size());
        const double real_c = static_cast<double>(real.counts[c]);
        if (var > 0.0) {
            REQUIRE(sig.z[c] == Catch::Approx((real_c - mean) / std::sqrt(var)).margin(1e-9));
        } else {
            REQUIRE(sig.z[c] == (real_c == mean ? 0.0 : (real_c > mean ? cfg.z_cap : -cfg.z_cap)));
        }
    }
    // determinism
    const MotifSignature again = motif_signature(net, cfg);
    REQUIRE(again.z == sig.z);
}

TEST_CASE("signature strength is the Pearson correlation of profiles") {
    TargetSignature target;
    target.values = {-0.5, -0.3, 0.0, -0.2, -0.4, 0.0, 0.5, 0.0, 0.1, 0.1, 0.3, 0.1, 0.2};

    MotifSignature sig;
    double norm = 0.0;
    for (double v : target.values) norm += v * v;
    norm = std::sqrt(norm);
    for (int i = 0; i < 13; ++i) sig.sp[i] = target.values[i] / norm * 0.7;
    REQUIRE(signature_strength(sig, target) == Catch::Approx(1.0));
    for (int i = 0; i < 13; ++i) sig.sp[i] = -sig.sp[i];
    REQUIRE(signature_strength(sig, target) == Catch::Approx(-1.0));

    SECTION("orthogonal profile after centering") {
        // Build a vector orthogonal to the centered target.
        std::array<double, 13> t = target.values;
        double tm = 0.0;
        for (double v : t) tm += v;
        tm /= 13.0;
        std::array<double, 13> orth{};
        orth[0] = t[1] - tm;
        orth[1] = -(t[0] - tm);
        for (int i = 0; i < 13; ++i) sig.sp[i] = orth[i];
        REQUIRE(signature_strength(sig, target) == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("degenerate profile reports zero") {
        sig.sp.fill(0.0);
        REQUIRE(signature_strength(sig, target) == 0.0);
        sig.sp.fill(0.25);
        REQUIRE(signature_strength(sig, target) == 0.0);
    }
    SECTION("all-equal target is a parameter error") {
        TargetSignature flat;
        flat.values.fill(1.0);
        REQUIRE_THROWS_AS(signature_strength(sig, flat), std::invalid_argument);
    }
}

TEST_CASE("sigma is invariant under positive rescaling of z") {
    TargetSignature target;
    target.values = {-0.5, -0.3, 0.0, -0.2, -0.4, 0.0, 0.5, 0.0, 0.1, 0.1, 0.3, 0.1, 0.2};
    Rng rng = make_rng(55);
    MotifSignature a, b;
    std::array<double, 13> z{};
    for (double& v : z) v = rand_real01(rng) * 4.0 - 2.0;
    auto to_sp = [](const std::array<double, 13>& zz) {
        double n = 0.0;
        for (double v : zz) n += v * v;
        n = std::sqrt(n);
        std::array<double, 13> sp{};
        for (int i = 0; i < 13; ++i) sp[i] = zz[i] / n;
        return sp;
    };
    a.sp = to_sp(z);
    std::array<double, 13> scaled = z;
    for (double& v : scaled) v *= 3.7;
    b.sp = to_sp(scaled);
    REQUIRE(signature_strength(a, target) == Catch::Approx(signature_strength(b, target)));
}
