#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "suppnet/model.hpp"
#include "suppnet/motifs.hpp"
#include "suppnet/parallel.hpp"
#include "suppnet/rng.hpp"

namespace suppnet {

enum class Objective { CostRobustness, CostSigma };

/// Settings of the evolutionary optimizer. The population transition follows
/// the elite/random/offspring split; offspring come from uniform choice
/// between mutation and recombination with binary-tournament parents.
struct GaConfig {
    int population_size = 200;
    int generations = 100;
    int m_min = 1;
    int m_max = 1;
    int mutation_size = 1;             // edges touched per mutation
    double elite_fraction = 0.30;
    double random_fraction = 0.05;
    std::optional<double> edge_length_cap;
    Objective objective = Objective::CostRobustness;
    bool two_sided = true;
    std::uint64_t seed = 0;
    NullModelConfig motif_cfg;         // null model for sigma (CostSigma only)
    int sigma_search_ensemble = 100;   // reduced ensemble used during the run
    TargetSignature target;            // target pattern (CostSigma only)

    void validate() const {
        if (population_size < 4) throw std::invalid_argument("population_size must be >= 4");
        if (generations < 1) throw std::invalid_argument("generations must be >= 1");
        if (m_min > m_max) throw std::invalid_argument("m_min must not exceed m_max");
        if (m_min < 0) throw std::invalid_argument("m_min must be >= 0");
        if (mutation_size < 1) throw std::invalid_argument("mutation_size must be >= 1");
        if (elite_fraction <= 0.0 || elite_fraction >= 1.0)
            throw std::invalid_argument("elite_fraction must be in (0, 1)");
        if (random_fraction < 0.0 || elite_fraction + random_fraction >= 1.0)
            throw std::invalid_argument("elite_fraction + random_fraction must be < 1");
        if (objective == Objective::CostSigma) {
            target.validate();
            if (sigma_search_ensemble < 10)
                throw std::invalid_argument("sigma_search_ensemble must be >= 10");
        }
    }
};

/// All directed edges admissible for a setup: no self-loops, and when a
/// length cap is set, Euclidean length within the cap. Lexicographic order.
inline std::vector<Edge> admissible_edges(const Setup& setup, std::optional<double> cap) {
    std::vector<Edge> edges;
    const int n = setup.size();
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            if (cap && setup.distance(u, v) > *cap) continue;
            edges.push_back(Edge{u, v});
        }
    }
    return edges;
}

/// m distinct edges drawn uniformly without replacement from the admissible
/// universe.
inline Network random_network(const SetupPtr& setup, int m, std::optional<double> cap,
                              std::uint64_t seed) {
    std::vector<Edge> universe = admissible_edges(*setup, cap);
    if (m < 0 || static_cast<std::size_t>(m) > universe.size())
        throw std::invalid_argument("requested edge count exceeds the admissible universe");
    Rng rng = make_rng(seed);
    std::vector<Edge> chosen;
    chosen.reserve(static_cast<std::size_t>(m));
    for (std::size_t idx : sample_indices(rng, universe.size(), static_cast<std::size_t>(m)))
        chosen.push_back(universe[idx]);
    return Network(setup, std::move(chosen));
}

namespace detail {

template <typename Gen>
Network mutate_impl(const Network& net, const GaConfig& cfg, Gen& rng) {
    std::vector<Edge> edges = net.edges();
    const std::uint64_t op = rand_index(rng, 3);
    const std::size_t mm = static_cast<std::size_t>(cfg.mutation_size);

    auto remove_random = [&](std::size_t k) {
        k = std::min(k, edges.size());
        auto victims = sample_indices(rng, edges.size(), k);
        std::sort(victims.begin(), victims.end(), std::greater<>());
        for (std::size_t v : victims) edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(v));
    };
    auto add_random = [&](std::size_t k) {
        std::vector<Edge> sorted = edges;
        std::sort(sorted.begin(), sorted.end());
        std::vector<Edge> absent;
        for (const Edge& e : admissible_edges(net.setup(), cfg.edge_length_cap))
            if (!std::binary_search(sorted.begin(), sorted.end(), e)) absent.push_back(e);
        k = std::min(k, absent.size());
        for (std::size_t idx : sample_indices(rng, absent.size(), k)) edges.push_back(absent[idx]);
    };

    if (op == 0) {
        remove_random(mm);
    } else if (op == 1) {
        add_random(mm);
    } else {
        remove_random(mm);
        add_random(mm);
    }
    return Network(net.setup_ptr(), std::move(edges));
}

template <typename Gen>
Network recombine_impl(const Network& a, const Network& b, Gen& rng) {
    if (!a.same_setup_as(b)) throw std::invalid_argument("recombine: networks have different setups");
    std::vector<Edge> edges;
    for (const Edge& e : a.edges())
        if (rand_real01(rng) < 0.5) edges.push_back(e);
    for (const Edge& e : b.edges())
        if (rand_real01(rng) < 0.5) edges.push_back(e);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Network(a.setup_ptr(), std::move(edges));
}

}  // namespace detail

/// One of {remove, add, replace}, chosen uniformly, applied to
/// cfg.mutation_size random edges. Additions draw from the admissible absent
/// edges, so the output respects the length cap and edge validity.
inline Network mutate(const Network& net, const GaConfig& cfg, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    return detail::mutate_impl(net, cfg, rng);
}

/// Union of two independent half-density subsets of the parents' edge sets.
template <typename Gen>
Network recombine_with(const Network& a, const Network& b, Gen& rng) {
    return detail::recombine_impl(a, b, rng);
}

inline Network recombine(const Network& a, const Network& b, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    return detail::recombine_impl(a, b, rng);
}

// ---------------------------------------------------------------------------
// Dominance and sorting
// ---------------------------------------------------------------------------

enum class Dominance { First, Second, Neither };

/// Secondary-axis value entering the dominance relation: distance from the
/// critical pivot when the two-sided modification is active (maximized on
/// both branches), the raw value otherwise.
inline double two_sided_gain(double secondary, double critical, bool two_sided) {
    return two_sided ? std::fabs(secondary - critical) : secondary;
}

struct ObjectiveView {
    double cost = 0.0;
    double secondary = 0.0;  // r or sigma, untransformed
    bool feasible = false;
    double violation = 0.0;
};

/// Constrained dominance: feasible beats infeasible, infeasible members
/// compare by total constraint violation, feasible members compare by Pareto
/// dominance on (minimize cost, maximize gain). In two-sided mode the front
/// has two parts solving separate subproblems (minimize the secondary below
/// the critical pivot, maximize it above), so members on opposite sides of
/// the pivot are incomparable; collapsing both sides onto the |x - pivot|
/// axis would let the upper branch dominate the lower one out of existence.
inline Dominance dominance(const ObjectiveView& a, const ObjectiveView& b, double critical,
                           const GaConfig& cfg) {
    if (a.feasible != b.feasible) return a.feasible ? Dominance::First : Dominance::Second;
    if (!a.feasible) {
        if (a.violation < b.violation) return Dominance::First;
        if (b.violation < a.violation) return Dominance::Second;
        return Dominance::Neither;
    }
    if (cfg.two_sided && (a.secondary < critical) != (b.secondary < critical))
        return Dominance::Neither;
    const double ga = two_sided_gain(a.secondary, critical, cfg.two_sided);
    const double gb = two_sided_gain(b.secondary, critical, cfg.two_sided);
    const bool a_not_worse = a.cost <= b.cost && ga >= gb;
    const bool b_not_worse = b.cost <= a.cost && gb >= ga;
    if (a_not_worse && !b_not_worse) return Dominance::First;
    if (b_not_worse && !a_not_worse) return Dominance::Second;
    return Dominance::Neither;
}

struct EvaluatedMember {
    Network net;
    Metrics metrics;
    double sigma = std::numeric_limits<double>::quiet_NaN();
    double violation = 0.0;
    bool feasible = false;
    int rank = -1;
    double crowding = 0.0;

    double secondary(Objective objective) const {
        return objective == Objective::CostSigma ? sigma : metrics.robustness;
    }
    ObjectiveView view(Objective objective) const {
        return ObjectiveView{metrics.cost, secondary(objective), feasible, violation};
    }
};

/// Result of an optimization run: the final feasible nondominated set, with
/// the critical pivot value in force when it was emitted.
struct ParetoArchive {
    std::vector<EvaluatedMember> members;
    double critical_value = 0.0;
    Objective objective = Objective::CostRobustness;
    bool two_sided = true;
    std::string diagnostic;  // non-empty when the archive is empty
};

namespace detail {

inline std::vector<std::vector<std::size_t>> nondominated_sort(std::vector<EvaluatedMember>& members,
                                                               double critical, const GaConfig& cfg) {
    const std::size_t n = members.size();
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<int> dominating(n, 0);
    std::vector<ObjectiveView> views(n);
    for (std::size_t i = 0; i < n; ++i) views[i] = members[i].view(cfg.objective);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Dominance d = dominance(views[i], views[j], critical, cfg);
            if (d == Dominance::First) {
                dominated[i].push_back(j);
                ++dominating[j];
            } else if (d == Dominance::Second) {
                dominated[j].push_back(i);
                ++dominating[i];
            }
        }
    }

    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (dominating[i] == 0) current.push_back(i);
    int rank = 0;
    while (!current.empty()) {
        for (std::size_t i : current) members[i].rank = rank;
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            for (std::size_t j : dominated[i]) {
                if (--dominating[j] == 0) next.push_back(j);
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
        ++rank;
    }
    return fronts;
}

inline void crowding_distance(std::vector<EvaluatedMember>& members,
                              const std::vector<std::vector<std::size_t>>& fronts, double critical,
                              const GaConfig& cfg) {
    const double inf = std::numeric_limits<double>::infinity();
    for (const auto& front : fronts) {
        for (std::size_t i : front) members[i].crowding = 0.0;
        if (front.size() <= 2) {
            for (std::size_t i : front) members[i].crowding = inf;
            continue;
        }
        for (int axis = 0; axis < 2; ++axis) {
            std::vector<std::size_t> order = front;
            auto value = [&](std::size_t i) {
                return axis == 0 ? members[i].metrics.cost
                                 : two_sided_gain(members[i].secondary(cfg.objective), critical,
                                                  cfg.two_sided);
            };
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                const double va = value(a), vb = value(b);
                return va < vb || (va == vb && a < b);
            });
            const double lo = value(order.front()), hi = value(order.back());
            members[order.front()].crowding = inf;
            members[order.back()].crowding = inf;
            if (hi <= lo) continue;
            for (std::size_t k = 1; k + 1 < order.size(); ++k) {
                if (members[order[k]].crowding == inf) continue;
                members[order[k]].crowding +=
                    (value(order[k + 1]) - value(order[k - 1])) / (hi - lo);
            }
        }
    }
}

/// Selection order: better rank first, then larger crowding, then index.
inline bool crowded_less(const EvaluatedMember& a, const EvaluatedMember& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.crowding > b.crowding;
}

}  // namespace detail

/// 2D hypervolume of a (minimize cost, maximize gain) point set relative to
/// the reference corner (worst cost, worst gain). Dominated points add
/// nothing; points outside the reference box are clipped out.
inline double hypervolume(std::vector<std::pair<double, double>> points, double ref_cost,
                          double ref_gain) {
    std::erase_if(points, [&](const auto& p) { return p.first > ref_cost || p.second < ref_gain; });
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
        return a.first < b.first || (a.first == b.first && a.second > b.second);
    });
    double hv = 0.0;
    double prev_gain = ref_gain;
    for (const auto& [cost, gain] : points) {
        if (gain <= prev_gain) continue;
        hv += (ref_cost - cost) * (gain - prev_gain);
        prev_gain = gain;
    }
    return hv;
}

/// Per-generation snapshot passed to the optional evolve observer.
struct GenerationInfo {
    int generation = 0;
    double critical = 0.0;  // pivot used for this generation's sort
    const std::vector<EvaluatedMember>* population = nullptr;
};

using GenerationObserver = std::function<void(const GenerationInfo&)>;

namespace detail {

class SigmaEvaluator {
  public:
    SigmaEvaluator(const GaConfig& cfg) : cfg_(cfg) {
        inner_ = cfg.motif_cfg;
        inner_.ensemble_size = cfg.sigma_search_ensemble;
    }

    double search_sigma(const Network& net) { return score(net, inner_); }
    double full_sigma(const Network& net) { return score(net, cfg_.motif_cfg); }

  private:
    double score(const Network& net, const NullModelConfig& null_cfg) {
        if (net.setup().size() < 3 || net.edge_count() < 2) return 0.0;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = cache_.find({null_cfg.ensemble_size, net.edges()});
            if (it != cache_.end()) return it->second;
        }
        // Seeding by the edge set makes sigma a pure function of the network.
        NullModelConfig cfg = null_cfg;
        std::uint64_t h = splitmix64(null_cfg.seed);
        for (const Edge& e : net.edges())
            h = derive_seed(h, static_cast<std::uint64_t>(e.from) * 131071ULL +
                                   static_cast<std::uint64_t>(e.to));
        cfg.seed = h;
        const MotifSignature sig = motif_signature(net, cfg);
        const double sigma = signature_strength(sig, cfg_.target);
        std::lock_guard<std::mutex> lock(mutex_);
        cache_[{null_cfg.ensemble_size, net.edges()}] = sigma;
        return sigma;
    }

    const GaConfig& cfg_;
    NullModelConfig inner_;
    std::map<std::pair<int, std::vector<Edge>>, double> cache_;
    std::mutex mutex_;
};

inline double violation_of(const Network& net, const Metrics& m, const GaConfig& cfg) {
    double v = std::fabs(m.demand - 1.0);
    if (m.edges < cfg.m_min) v += static_cast<double>(cfg.m_min - m.edges);
    if (m.edges > cfg.m_max) v += static_cast<double>(m.edges - cfg.m_max);
    if (cfg.edge_length_cap) {
        for (const Edge& e : net.edges()) {
            const double len = net.setup().distance(e.from, e.to);
            if (len > *cfg.edge_length_cap) v += len - *cfg.edge_length_cap;
        }
    }
    return v;
}

inline double critical_of(const std::vector<EvaluatedMember>& members, const GaConfig& cfg) {
    const EvaluatedMember* best = nullptr;
    for (const EvaluatedMember& m : members) {
        if (!m.feasible) continue;
        if (!best || m.metrics.cost < best->metrics.cost) best = &m;
    }
    return best ? best->secondary(cfg.objective) : 0.0;
}

}  // namespace detail

/// Runs the optimizer for exactly cfg.generations evaluated populations and
/// returns the final feasible nondominated set. Deterministic in cfg.seed:
/// every member's randomness comes from a stream derived from
/// (seed, generation, index), so thread count does not affect the result.
inline ParetoArchive evolve(const Setup& setup_in, const GaConfig& cfg,
                            const GenerationObserver& observer = {}) {
    setup_in.validate();
    cfg.validate();
    auto setup = std::make_shared<Setup>(setup_in);
    const std::vector<Edge> universe = admissible_edges(*setup, cfg.edge_length_cap);
    if (static_cast<std::size_t>(cfg.m_max) > universe.size())
        throw std::invalid_argument("m_max exceeds the admissible edge universe");

    const int pop_n = cfg.population_size;
    detail::SigmaEvaluator sigma_eval(cfg);

    auto window_m = [&](Rng& rng) {
        return cfg.m_min + static_cast<int>(rand_index(rng, static_cast<std::uint64_t>(cfg.m_max - cfg.m_min + 1)));
    };
    auto make_random = [&](std::uint64_t seed) {
        Rng rng = make_rng(seed);
        const int m = window_m(rng);
        std::vector<Edge> chosen;
        chosen.reserve(static_cast<std::size_t>(m));
        for (std::size_t idx : sample_indices(rng, universe.size(), static_cast<std::size_t>(m)))
            chosen.push_back(universe[idx]);
        return Network(setup, std::move(chosen));
    };

    std::vector<EvaluatedMember> population;
    std::vector<char> evaluated;
    population.reserve(static_cast<std::size_t>(pop_n));
    for (int i = 0; i < pop_n; ++i) {
        EvaluatedMember m;
        m.net = make_random(derive_seed(cfg.seed, 0x1417, 0, static_cast<std::uint64_t>(i)));
        population.push_back(std::move(m));
    }
    evaluated.assign(population.size(), 0);

    auto evaluate_population = [&]() {
        parallel_for(population.size(), [&](std::size_t i) {
            if (evaluated[i]) return;
            EvaluatedMember& m = population[i];
            m.metrics = evaluate(m.net);
            if (cfg.objective == Objective::CostSigma) m.sigma = sigma_eval.search_sigma(m.net);
            m.violation = detail::violation_of(m.net, m.metrics, cfg);
            m.feasible = m.violation == 0.0;
            evaluated[i] = 1;
        });
    };

    double critical = 0.0;
    for (int gen = 0; gen < cfg.generations; ++gen) {
        if (gen > 0) {
            // Selection pool ordered by rank then crowding.
            std::vector<std::size_t> order(population.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return detail::crowded_less(population[a], population[b]);
            });

            int elite_n = static_cast<int>(std::llround(cfg.elite_fraction * pop_n));
            elite_n = std::clamp(elite_n, 1, pop_n - 1);
            int random_n = static_cast<int>(std::llround(cfg.random_fraction * pop_n));
            random_n = std::clamp(random_n, 0, pop_n - elite_n);
            const int offspring_n = pop_n - elite_n - random_n;

            std::vector<EvaluatedMember> next;
            std::vector<char> next_evaluated;
            next.reserve(static_cast<std::size_t>(pop_n));
            {
                // Distinct networks first; duplicates only fill leftover elite
                // slots. Converged populations otherwise collapse the front to
                // a handful of clones.
                std::vector<std::size_t> dup;
                std::set<std::vector<Edge>> seen;
                for (std::size_t oi = 0; oi < order.size() && static_cast<int>(next.size()) < elite_n; ++oi) {
                    const EvaluatedMember& m = population[order[oi]];
                    if (seen.insert(m.net.edges()).second) {
                        next.push_back(m);
                        next_evaluated.push_back(1);
                    } else {
                        dup.push_back(order[oi]);
                    }
                }
                for (std::size_t k = 0; static_cast<int>(next.size()) < elite_n && k < dup.size(); ++k) {
                    next.push_back(population[dup[k]]);
                    next_evaluated.push_back(1);
                }
            }

            auto tournament = [&](Rng& rng) -> const Network& {
                const std::size_t a = static_cast<std::size_t>(rand_index(rng, static_cast<std::uint64_t>(elite_n)));
                const std::size_t b = static_cast<std::size_t>(rand_index(rng, static_cast<std::uint64_t>(elite_n)));
                const EvaluatedMember& ma = next[a];
                const EvaluatedMember& mb = next[b];
                if (detail::crowded_less(mb, ma)) return mb.net;
                return ma.net;
            };

            for (int k = 0; k < offspring_n; ++k) {
                Rng rng = make_rng(derive_seed(cfg.seed, 0x0ff5, static_cast<std::uint64_t>(gen),
                                               static_cast<std::uint64_t>(k)));
                EvaluatedMember child;
                if (rand_index(rng, 2) == 0) {
                    child.net = detail::mutate_impl(tournament(rng), cfg, rng);
                } else {
                    const Network& pa = tournament(rng);
                    const Network& pb = tournament(rng);
                    child.net = detail::recombine_impl(pa, pb, rng);
                }
                next.push_back(std::move(child));
                next_evaluated.push_back(0);
            }
            for (int j = 0; j < random_n; ++j) {
                EvaluatedMember fresh;
                fresh.net = make_random(derive_seed(cfg.seed, 0x1417, static_cast<std::uint64_t>(gen),
                                                    static_cast<std::uint64_t>(j)));
                next.push_back(std::move(fresh));
                next_evaluated.push_back(0);
            }
            population = std::move(next);
            evaluated.assign(next_evaluated.begin(), next_evaluated.end());
        }

        evaluate_population();
        const auto fronts = detail::nondominated_sort(population, critical, cfg);
        detail::crowding_distance(population, fronts, critical, cfg);
        if (observer) {
            GenerationInfo info;
            info.generation = gen;
            info.critical = critical;
            info.population = &population;
            observer(info);
        }
        // Pivot for the next generation's sort, re-evaluated as the front evolves.
        critical = detail::critical_of(population, cfg);
    }

    // Final archive: feasible members of the first front, deduplicated.
    ParetoArchive archive;
    archive.objective = cfg.objective;
    archive.two_sided = cfg.two_sided;

    std::vector<EvaluatedMember> front;
    for (const EvaluatedMember& m : population)
        if (m.rank == 0 && m.feasible) front.push_back(m);
    std::sort(front.begin(), front.end(), [](const EvaluatedMember& a, const EvaluatedMember& b) {
        if (a.metrics.cost != b.metrics.cost) return a.metrics.cost < b.metrics.cost;
        return a.net.edges() < b.net.edges();
    });
    front.erase(std::unique(front.begin(), front.end(),
                            [](const EvaluatedMember& a, const EvaluatedMember& b) {
                                return a.net.edges() == b.net.edges();
                            }),
                front.end());

    if (cfg.objective == Objective::CostSigma) {
        // Re-score the survivors with the full ensemble, then re-filter so the
        // emitted set is nondominated under the re-scored values.
        parallel_for(front.size(), [&](std::size_t i) { front[i].sigma = sigma_eval.full_sigma(front[i].net); });
    }

    // The emitted archive must be internally nondominated under its own pivot.
    double critical_emit = 0.0;
    {
        const EvaluatedMember* best = nullptr;
        for (const EvaluatedMember& m : front)
            if (!best || m.metrics.cost < best->metrics.cost) best = &m;
        critical_emit = best ? best->secondary(cfg.objective) : 0.0;
    }
    std::vector<EvaluatedMember> kept;
    for (std::size_t i = 0; i < front.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < front.size() && !dominated; ++j) {
            if (i == j) continue;
            if (dominance(front[j].view(cfg.objective), front[i].view(cfg.objective), critical_emit,
                          cfg) == Dominance::First)
                dominated = true;
        }
        if (!dominated) kept.push_back(front[i]);
    }
    archive.members = std::move(kept);
    archive.critical_value = critical_emit;
    for (std::size_t i = 0; i < archive.members.size(); ++i) archive.members[i].rank = 0;
    if (archive.members.empty())
        archive.diagnostic = "no feasible network found after " + std::to_string(cfg.generations) +
                             " generations";
    return archive;
}

/// True when every member is feasible, within the edge window, and no member
/// dominates another under the archive's own pivot.
inline bool archive_is_consistent(const ParetoArchive& archive, const GaConfig& cfg) {
    for (const EvaluatedMember& m : archive.members) {
        if (!m.feasible || m.metrics.demand != 1.0) return false;
        if (m.metrics.edges < cfg.m_min || m.metrics.edges > cfg.m_max) return false;
        if (cfg.edge_length_cap) {
            for (const Edge& e : m.net.edges())
                if (m.net.setup().distance(e.from, e.to) > *cfg.edge_length_cap + 1e-12) return false;
        }
    }
    for (std::size_t i = 0; i < archive.members.size(); ++i)
        for (std::size_t j = 0; j < archive.members.size(); ++j) {
            if (i == j) continue;
            if (dominance(archive.members[i].view(cfg.objective),
                          archive.members[j].view(cfg.objective), archive.critical_value,
                          cfg) != Dominance::Neither)
                return false;
        }
    return true;
}

}  // namespace suppnet
