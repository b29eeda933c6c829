#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "suppnet/evolver.hpp"
#include "suppnet/model.hpp"

using namespace suppnet;

namespace {

SetupPtr make_setup(std::vector<Node> nodes) {
    auto s = std::make_shared<Setup>();
    s->nodes = std::move(nodes);
    return s;
}

// Independent reachability: adjacency matrix + recursive expansion, used as
// the oracle for demand satisfaction and robustness.
int oracle_satisfied(const Setup& setup, const std::vector<Edge>& edges, int skip = -1) {
    const int n = setup.size();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (int i = 0; i < static_cast<int>(edges.size()); ++i)
        if (i != skip) adj[edges[i].from][edges[i].to] = 1;
    std::vector<char> reach(n, 0);
    for (const Node& node : setup.nodes)
        if (node.role == NodeRole::Producer) reach[node.id] = 1;
    for (bool changed = true; changed;) {
        changed = false;
        for (int u = 0; u < n; ++u) {
            if (!reach[u]) continue;
            for (int v = 0; v < n; ++v) {
                if (adj[u][v] && !reach[v]) {
                    reach[v] = 1;
                    changed = true;
                }
            }
        }
    }
    int satisfied = 0;
    for (const Node& node : setup.nodes)
        if (node.role == NodeRole::Demander && reach[node.id]) ++satisfied;
    return satisfied;
}

std::vector<Edge> oracle_removable(const Network& net) {
    std::vector<Edge> out;
    const int base = oracle_satisfied(net.setup(), net.edges());
    for (int i = 0; i < net.edge_count(); ++i)
        if (oracle_satisfied(net.setup(), net.edges(), i) >= base) out.push_back(net.edges()[i]);
    return out;
}

}  // namespace

TEST_CASE("generate_setup role counts and determinism") {
    const Setup tiny = generate_setup(2, 1, 1, 7);
    REQUIRE(tiny.producers().size() == 1);
    REQUIRE(tiny.demanders().size() == 1);
    REQUIRE(tiny.intermediates().empty());

    const Setup paper = generate_setup(20, 1, 10, 12345);
    REQUIRE(paper.size() == 20);
    REQUIRE(paper.demanders().size() == 10);
    REQUIRE(paper.producers().size() == 1);
    for (const Node& n : paper.nodes) {
        REQUIRE(n.x >= 0.0);
        REQUIRE(n.x < 1.0);
        REQUIRE(n.y >= 0.0);
        REQUIRE(n.y < 1.0);
    }

    REQUIRE(generate_setup(20, 1, 10, 99) == generate_setup(20, 1, 10, 99));
    REQUIRE(generate_setup(20, 1, 10, 99) != generate_setup(20, 1, 10, 98));

    REQUIRE_THROWS_AS(generate_setup(1, 1, 1, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(generate_setup(5, 0, 2, 0), std::invalid_argument);
}

TEST_CASE("network_cost sums Euclidean edge lengths") {
    auto s = make_setup({{0, 0.0, 0.0, NodeRole::Producer},
                         {1, 3.0, 4.0, NodeRole::Demander},
                         {2, 1.0, 0.0, NodeRole::Intermediate},
                         {3, 1.0, 1.0, NodeRole::Intermediate}});
    REQUIRE(network_cost(Network(s, {{0, 1}})) == Catch::Approx(5.0));
    REQUIRE(network_cost(Network(s, {})) == 0.0);
    REQUIRE(network_cost(Network(s, {{0, 2}, {2, 3}})) == Catch::Approx(2.0));
}

TEST_CASE("demand_satisfaction via directed reachability") {
    auto s = make_setup({{0, 0.0, 0.0, NodeRole::Producer},
                         {1, 1.0, 0.0, NodeRole::Demander},
                         {2, 0.0, 1.0, NodeRole::Demander},
                         {3, 0.5, 0.5, NodeRole::Intermediate}});
    REQUIRE(demand_satisfaction(Network(s, {{0, 1}, {0, 2}})) == 1.0);
    REQUIRE(demand_satisfaction(Network(s, {})) == 0.0);
    // Producer -> intermediate -> D1; D2 isolated.
    const Network half(s, {{0, 3}, {3, 1}});
    REQUIRE(demand_satisfaction(half) == 0.5);
    REQUIRE(oracle_satisfied(*s, half.edges()) == 1);
}

TEST_CASE("robustness marks edges whose removal keeps demand satisfied") {
    auto s = make_setup({{0, 0.0, 0.0, NodeRole::Producer},
                         {1, 1.0, 0.0, NodeRole::Demander},
                         {2, 1.0, 1.0, NodeRole::Demander}});
    SECTION("star: every edge is the sole path to a demander") {
        const auto res = robustness(Network(s, {{0, 1}, {0, 2}}));
        REQUIRE(res.value == 0.0);
        REQUIRE(res.removable.empty());
    }
    SECTION("triangle with a redundant demander path") {
        const Network net(s, {{0, 1}, {1, 2}, {0, 2}});
        const auto res = robustness(net);
        REQUIRE(res.value == Catch::Approx(2.0 / 3.0));
        REQUIRE(res.removable == std::vector<Edge>{{0, 2}, {1, 2}});
        REQUIRE(res.removable == oracle_removable(net));
    }
    SECTION("empty network") {
        const auto res = robustness(Network(s, {}));
        REQUIRE(res.value == 0.0);
    }
}

TEST_CASE("fully duplicated star has r = 1") {
    auto s = make_setup({{0, 0.0, 0.0, NodeRole::Producer},
                         {1, 1.0, 0.0, NodeRole::Demander},
                         {2, 0.0, 1.0, NodeRole::Demander},
                         {3, 0.5, 0.1, NodeRole::Intermediate},
                         {4, 0.1, 0.5, NodeRole::Intermediate}});
    const Network net(s, {{0, 1}, {0, 2}, {0, 3}, {3, 1}, {0, 4}, {4, 2}});
    const Metrics m = evaluate(net);
    REQUIRE(m.demand == 1.0);
    REQUIRE(m.robustness == 1.0);
}

TEST_CASE("evaluate bundles the three metrics") {
    auto s = make_setup({{0, 0.0, 0.0, NodeRole::Producer},
                         {1, 1.0, 0.0, NodeRole::Demander},
                         {2, 1.0, 1.0, NodeRole::Demander}});
    SECTION("empty network") {
        const Metrics m = evaluate(Network(s, {}));
        REQUIRE(m == Metrics{0.0, 0.0, 0.0, 0});
    }
    SECTION("unit triangle") {
        const Metrics m = evaluate(Network(s, {{0, 1}, {1, 2}, {0, 2}}));
        REQUIRE(m.cost == Catch::Approx(2.0 + std::sqrt(2.0)));
        REQUIRE(m.demand == 1.0);
        REQUIRE(m.robustness == Catch::Approx(2.0 / 3.0));
        REQUIRE(m.edges == 3);
    }
    SECTION("pure function") {
        const Network net(s, {{0, 1}, {1, 2}});
        REQUIRE(evaluate(net) == evaluate(net));
    }
}

TEST_CASE("robustness equals the definitional brute force on random networks") {
    Rng rng = make_rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 3 + static_cast<int>(rand_index(rng, 8));
        auto setup = std::make_shared<Setup>(generate_setup(n, 1, std::max(1, n / 2), rng()));
        const int max_m = std::min(20, n * (n - 1));
        const int m = static_cast<int>(rand_index(rng, max_m + 1));
        const Network net = random_network(setup, m, std::nullopt, rng());

        const auto res = robustness(net);
        REQUIRE(res.removable == oracle_removable(net));
        const double d = demand_satisfaction(net);
        REQUIRE(d == static_cast<double>(oracle_satisfied(*setup, net.edges())) /
                         static_cast<double>(setup->demanders().size()));
        REQUIRE(res.value >= 0.0);
        REQUIRE(res.value <= 1.0);
        REQUIRE(d >= 0.0);
        REQUIRE(d <= 1.0);
    }
}

TEST_CASE("adding an edge never decreases demand satisfaction") {
    Rng rng = make_rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 4 + static_cast<int>(rand_index(rng, 6));
        auto setup = std::make_shared<Setup>(generate_setup(n, 1, n / 2, rng()));
        const Network net =
            random_network(setup, static_cast<int>(rand_index(rng, n + 2)), std::nullopt, rng());
        const double before = demand_satisfaction(net);
        for (int u = 0; u < n; ++u) {
            for (int v = 0; v < n; ++v) {
                if (u == v || net.contains(Edge{u, v})) continue;
                REQUIRE(demand_satisfaction(net.with_edge(Edge{u, v})) >= before);
            }
        }
    }
}

TEST_CASE("network invariants are enforced") {
    auto s = make_setup({{0, 0.0, 0.0, NodeRole::Producer}, {1, 1.0, 0.0, NodeRole::Demander}});
    REQUIRE_THROWS_AS(Network(s, {{0, 0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(Network(s, {{0, 1}, {0, 1}}), std::invalid_argument);
    REQUIRE_THROWS_AS(Network(s, {{0, 2}}), std::invalid_argument);
    // mutual pair is fine and kept sorted
    const Network net(s, {{1, 0}, {0, 1}});
    REQUIRE(net.edges() == std::vector<Edge>{{0, 1}, {1, 0}});
}
