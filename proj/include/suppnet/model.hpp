#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "suppnet/rng.hpp"

namespace suppnet {

enum class NodeRole { Producer, Demander, Intermediate };

inline const char* to_string(NodeRole r) {
    switch (r) {
        case NodeRole::Producer: return "producer";
        case NodeRole::Demander: return "demander";
        case NodeRole::Intermediate: return "intermediate";
    }
    return "intermediate";
}

inline NodeRole role_from_string(const std::string& s) {
    if (s == "producer") return NodeRole::Producer;
    if (s == "demander") return NodeRole::Demander;
    if (s == "intermediate") return NodeRole::Intermediate;
    throw std::invalid_argument("unknown node role: '" + s + "'");
}

struct Node {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    NodeRole role = NodeRole::Intermediate;

    bool operator==(const Node&) const = default;
};

/// A fixed spatial problem instance: node coordinates plus role assignment.
/// Candidate supply networks are edge sets over one setup.
struct Setup {
    std::vector<Node> nodes;
    std::uint64_t rng_seed = 0;

    int size() const { return static_cast<int>(nodes.size()); }

    std::vector<int> producers() const { return ids_with(NodeRole::Producer); }
    std::vector<int> demanders() const { return ids_with(NodeRole::Demander); }
    std::vector<int> intermediates() const { return ids_with(NodeRole::Intermediate); }

    double distance(int u, int v) const {
        const Node& a = nodes[static_cast<std::size_t>(u)];
        const Node& b = nodes[static_cast<std::size_t>(v)];
        return std::hypot(a.x - b.x, a.y - b.y);
    }

    /// Node ids must be 0..N-1 in order, coordinates finite, and at least
    /// one producer and one demander present.
    void validate() const {
        if (nodes.empty()) throw std::invalid_argument("setup has no nodes");
        int producers_n = 0, demanders_n = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].id != static_cast<int>(i))
                throw std::invalid_argument("setup node ids must be contiguous from 0");
            if (!std::isfinite(nodes[i].x) || !std::isfinite(nodes[i].y))
                throw std::invalid_argument("setup coordinates must be finite");
            if (nodes[i].role == NodeRole::Producer) ++producers_n;
            if (nodes[i].role == NodeRole::Demander) ++demanders_n;
        }
        if (producers_n < 1) throw std::invalid_argument("setup needs at least one producer");
        if (demanders_n < 1) throw std::invalid_argument("setup needs at least one demander");
    }

    bool operator==(const Setup&) const = default;

  private:
    std::vector<int> ids_with(NodeRole r) const {
        std::vector<int> out;
        for (const Node& n : nodes)
            if (n.role == r) out.push_back(n.id);
        return out;
    }
};

using SetupPtr = std::shared_ptr<const Setup>;

struct Edge {
    int from = 0;
    int to = 0;

    auto operator<=>(const Edge&) const = default;
};

/// A directed edge set over a setup. Edges are kept sorted lexicographically,
/// with no self-loops and no duplicates; mutual pairs (u->v and v->u) are
/// two distinct edges.
class Network {
  public:
    Network() = default;
    Network(SetupPtr setup, std::vector<Edge> edges) : setup_(std::move(setup)), edges_(std::move(edges)) {
        if (!setup_) throw std::invalid_argument("network requires a setup");
        normalize();
    }

    const Setup& setup() const { return *setup_; }
    const SetupPtr& setup_ptr() const { return setup_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    bool contains(Edge e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

    Network with_edge(Edge e) const {
        std::vector<Edge> es = edges_;
        es.push_back(e);
        return Network(setup_, std::move(es));
    }

    bool same_setup_as(const Network& other) const {
        return setup_ == other.setup_ || *setup_ == *other.setup_;
    }

    bool operator==(const Network& other) const {
        return edges_ == other.edges_ && same_setup_as(other);
    }

  private:
    void normalize() {
        const int n = setup_->size();
        for (const Edge& e : edges_) {
            if (e.from == e.to) throw std::invalid_argument("network edge is a self-loop");
            if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
                throw std::invalid_argument("network edge endpoint out of range");
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
            throw std::invalid_argument("network contains a duplicate edge");
    }

    SetupPtr setup_;
    std::vector<Edge> edges_;
};

struct Metrics {
    double cost = 0.0;        // c: total Euclidean edge length
    double demand = 0.0;      // d: fraction of demanders reachable from a producer
    double robustness = 0.0;  // r: fraction of edges individually safe to remove
    int edges = 0;            // M

    bool operator==(const Metrics&) const = default;
};

/// N nodes sampled i.i.d. uniform on the unit square, roles assigned by a
/// uniformly random permutation of the requested role multiset. Deterministic
/// in the seed: coordinates are drawn in node-id order, then roles shuffled.
inline Setup generate_setup(int n, int n_producers, int n_demanders, std::uint64_t seed) {
    if (n_producers < 1) throw std::invalid_argument("need at least one producer");
    if (n_demanders < 1) throw std::invalid_argument("need at least one demander");
    if (n < n_producers + n_demanders)
        throw std::invalid_argument("node count smaller than producer + demander count");

    Rng rng = make_rng(derive_seed(seed, 0x5e70));
    Setup s;
    s.rng_seed = seed;
    s.nodes.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        s.nodes[static_cast<std::size_t>(i)].id = i;
        s.nodes[static_cast<std::size_t>(i)].x = rand_real01(rng);
        s.nodes[static_cast<std::size_t>(i)].y = rand_real01(rng);
    }
    std::vector<NodeRole> roles(static_cast<std::size_t>(n), NodeRole::Intermediate);
    for (int i = 0; i < n_producers; ++i) roles[static_cast<std::size_t>(i)] = NodeRole::Producer;
    for (int i = 0; i < n_demanders; ++i)
        roles[static_cast<std::size_t>(n_producers + i)] = NodeRole::Demander;
    shuffle_vec(rng, roles);
    for (int i = 0; i < n; ++i) s.nodes[static_cast<std::size_t>(i)].role = roles[static_cast<std::size_t>(i)];
    return s;
}

inline double network_cost(const Network& net) {
    double c = 0.0;
    for (const Edge& e : net.edges()) c += net.setup().distance(e.from, e.to);
    return c;
}

namespace detail {

/// Out-adjacency as (neighbor, edge index) lists; rebuilt per query.
struct OutAdjacency {
    explicit OutAdjacency(const Network& net) : lists(static_cast<std::size_t>(net.setup().size())) {
        const auto& es = net.edges();
        for (std::size_t i = 0; i < es.size(); ++i)
            lists[static_cast<std::size_t>(es[i].from)].push_back(
                {es[i].to, static_cast<int>(i)});
    }
    std::vector<std::vector<std::pair<int, int>>> lists;
};

/// Number of demanders reachable from any producer by a directed path,
/// optionally ignoring one edge.
inline int satisfied_demanders(const Setup& setup, const OutAdjacency& adj, int skip_edge = -1) {
    const int n = setup.size();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    for (const Node& node : setup.nodes) {
        if (node.role == NodeRole::Producer) {
            seen[static_cast<std::size_t>(node.id)] = 1;
            stack.push_back(node.id);
        }
    }
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (auto [v, ei] : adj.lists[static_cast<std::size_t>(u)]) {
            if (ei == skip_edge || seen[static_cast<std::size_t>(v)]) continue;
            seen[static_cast<std::size_t>(v)] = 1;
            stack.push_back(v);
        }
    }
    int satisfied = 0;
    for (const Node& node : setup.nodes)
        if (node.role == NodeRole::Demander && seen[static_cast<std::size_t>(node.id)]) ++satisfied;
    return satisfied;
}

}  // namespace detail

inline double demand_satisfaction(const Network& net) {
    const auto demanders = net.setup().demanders();
    if (demanders.empty()) throw std::invalid_argument("setup has no demanders");
    detail::OutAdjacency adj(net);
    return static_cast<double>(detail::satisfied_demanders(net.setup(), adj)) /
           static_cast<double>(demanders.size());
}

struct RobustnessResult {
    double value = 0.0;
    std::vector<Edge> removable;  // E_r: edges whose single removal keeps d intact
};

/// An edge is safely removable when deleting it alone does not reduce the
/// number of satisfied demanders. Removals are independent, never compounded.
/// r = |E_r| / M, defined as 0 for the empty network.
inline RobustnessResult robustness(const Network& net) {
    RobustnessResult res;
    const int m = net.edge_count();
    if (m == 0) return res;
    detail::OutAdjacency adj(net);
    const int base = detail::satisfied_demanders(net.setup(), adj);
    for (int i = 0; i < m; ++i) {
        if (detail::satisfied_demanders(net.setup(), adj, i) >= base)
            res.removable.push_back(net.edges()[static_cast<std::size_t>(i)]);
    }
    res.value = static_cast<double>(res.removable.size()) / static_cast<double>(m);
    return res;
}

inline Metrics evaluate(const Network& net) {
    Metrics out;
    out.edges = net.edge_count();
    out.cost = network_cost(net);
    out.demand = demand_satisfaction(net);
    out.robustness = robustness(net).value;
    return out;
}

}  // namespace suppnet
