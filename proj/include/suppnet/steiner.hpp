#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include "suppnet/model.hpp"

namespace suppnet {

/// Raised for inputs the heuristic does not define (e.g. several producers).
struct UnsupportedConfiguration : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

/// Prim's algorithm over the complete Euclidean graph on `ids`. Ties break
/// toward the lower node id, so the tree is deterministic.
struct MstResult {
    double cost = 0.0;
    std::vector<Edge> edges;  // undirected, stored as (parent, child) of the Prim tree
};

inline MstResult euclidean_mst(const Setup& setup, const std::vector<int>& ids) {
    MstResult res;
    const std::size_t n = ids.size();
    if (n <= 1) return res;
    std::vector<char> in_tree(n, 0);
    std::vector<double> key(n, std::numeric_limits<double>::infinity());
    std::vector<int> parent(n, -1);
    key[0] = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (in_tree[i]) continue;
            if (best == n || key[i] < key[best] ||
                (key[i] == key[best] && ids[i] < ids[best]))
                best = i;
        }
        in_tree[best] = 1;
        if (parent[best] >= 0) {
            res.cost += key[best];
            res.edges.push_back(Edge{ids[static_cast<std::size_t>(parent[best])], ids[best]});
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (in_tree[i]) continue;
            const double d = setup.distance(ids[best], ids[i]);
            if (d < key[i]) {
                key[i] = d;
                parent[i] = static_cast<int>(best);
            }
        }
    }
    return res;
}

inline double euclidean_mst_cost(const Setup& setup, const std::vector<int>& ids) {
    return euclidean_mst(setup, ids).cost;
}

/// Orients an undirected tree away from `root` by depth-first traversal.
inline std::vector<Edge> orient_from(const std::vector<Edge>& tree, int root) {
    std::vector<std::pair<int, int>> adj_flat;
    for (const Edge& e : tree) {
        adj_flat.push_back({e.from, e.to});
        adj_flat.push_back({e.to, e.from});
    }
    std::vector<Edge> out;
    std::vector<int> stack{root};
    std::vector<char> seen;
    int max_id = root;
    for (const Edge& e : tree) max_id = std::max({max_id, e.from, e.to});
    seen.assign(static_cast<std::size_t>(max_id) + 1, 0);
    seen[static_cast<std::size_t>(root)] = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (auto [a, b] : adj_flat) {
            if (a != u || seen[static_cast<std::size_t>(b)]) continue;
            seen[static_cast<std::size_t>(b)] = 1;
            out.push_back(Edge{a, b});
            stack.push_back(b);
        }
    }
    return out;
}

inline int sole_producer(const Setup& setup) {
    const auto producers = setup.producers();
    if (producers.size() != 1)
        throw UnsupportedConfiguration("min-cost heuristic supports exactly one producer, got " +
                                       std::to_string(producers.size()));
    return producers.front();
}

}  // namespace detail

/// Minimum-total-length directed tree spanning the producer and all demanders,
/// oriented away from the producer. With symmetric Euclidean weights the MST
/// rooted at the producer is a minimum spanning arborescence over the
/// terminal set, so this subproblem is solved exactly.
inline Network terminal_arborescence(const Setup& setup) {
    setup.validate();
    const int producer = detail::sole_producer(setup);
    std::vector<int> terminals{producer};
    for (int d : setup.demanders()) terminals.push_back(d);
    const auto mst = detail::euclidean_mst(setup, terminals);
    auto setup_ptr = std::make_shared<Setup>(setup);
    return Network(std::move(setup_ptr), detail::orient_from(mst.edges, producer));
}

/// Greedy insertion of intermediate nodes: at each step the candidate whose
/// inclusion yields the largest strict decrease of the spanning-tree cost is
/// adopted (ties reject, equal-gain candidates resolve to the lowest id);
/// stops when no candidate strictly decreases the cost.
inline Network insert_intermediates(const Network& net) {
    const Setup& setup = net.setup();
    const int producer = detail::sole_producer(setup);

    std::vector<int> base{producer};
    for (int d : setup.demanders()) base.push_back(d);
    std::vector<char> used(static_cast<std::size_t>(setup.size()), 0);
    for (const Edge& e : net.edges()) {
        used[static_cast<std::size_t>(e.from)] = 1;
        used[static_cast<std::size_t>(e.to)] = 1;
    }
    std::vector<int> members = base;
    for (int i : setup.intermediates())
        if (used[static_cast<std::size_t>(i)]) members.push_back(i);

    double current = detail::euclidean_mst_cost(setup, members);
    for (;;) {
        int best_candidate = -1;
        double best_cost = current;
        for (int cand : setup.intermediates()) {
            if (used[static_cast<std::size_t>(cand)]) continue;
            std::vector<int> trial = members;
            trial.push_back(cand);
            const double cost = detail::euclidean_mst_cost(setup, trial);
            if (cost < best_cost) {
                best_cost = cost;
                best_candidate = cand;
            }
        }
        if (best_candidate < 0) break;
        members.push_back(best_candidate);
        used[static_cast<std::size_t>(best_candidate)] = 1;
        current = best_cost;
    }

    const auto mst = detail::euclidean_mst(setup, members);
    return Network(net.setup_ptr(), detail::orient_from(mst.edges, producer));
}

/// The full heuristic: exact solution over the terminals, then greedy
/// intermediate insertion until the cost stops decreasing.
inline Network solve_min_cost(const Setup& setup) {
    return insert_intermediates(terminal_arborescence(setup));
}

}  // namespace suppnet
