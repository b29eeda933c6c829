#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "suppnet/evolver.hpp"
#include "suppnet/geo.hpp"
#include "suppnet/io.hpp"
#include "suppnet/model.hpp"
#include "suppnet/motifs.hpp"
#include "suppnet/stats.hpp"
#include "suppnet/steiner.hpp"
#include "suppnet/tables.hpp"

namespace suppnet {

constexpr const char* kVersion = "0.1.0";

enum class ExperimentKind { E1, E2, E3, E4 };

inline const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::E1: return "e1";
        case ExperimentKind::E2: return "e2";
        case ExperimentKind::E3: return "e3";
        case ExperimentKind::E4: return "e4";
    }
    return "e1";
}

inline ExperimentKind experiment_kind_from_string(const std::string& s) {
    if (s == "e1") return ExperimentKind::E1;
    if (s == "e2") return ExperimentKind::E2;
    if (s == "e3") return ExperimentKind::E3;
    if (s == "e4") return ExperimentKind::E4;
    throw std::invalid_argument("unknown experiment kind: '" + s + "' (expected e1|e2|e3|e4)");
}

/// The N = 20 edge-window ladder: (10,16), (13,19), ..., (40,46).
inline std::vector<std::pair<int, int>> default_m_windows() {
    std::vector<std::pair<int, int>> w;
    for (int lo = 10; lo <= 40; lo += 3) w.push_back({lo, lo + 6});
    return w;
}

/// Declarative description of one experiment run. Loaded from a JSON spec
/// file; unspecified fields keep the per-kind defaults.
struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::E1;
    std::uint64_t seed = 1;
    int setups = 50;
    int n = 20;
    std::vector<std::pair<int, int>> m_windows = default_m_windows();
    double percentile_low = 10.0;
    double percentile_high = 90.0;
    int base_networks = 500;    // E3
    double top_fraction = 0.10; // E3
    std::vector<double> t_values = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};  // E4
    std::string geo_file;       // E4
    std::string target_file;
    ExpandBudget expand_budget = ExpandBudget::OnePlusT;
    double length_cap_factor = 1.2;  // E2

    // optimizer block
    int population = 200;
    int generations = 150;
    int mutation_size = 1;
    double elite_fraction = 0.30;
    double random_fraction = 0.05;
    bool two_sided = true;

    // null-model block
    NullModel null_model = NullModel::PreserveMutual;
    int ensemble = 500;
    int swaps_per_edge = 10;
    int search_ensemble = 100;  // reduced ensemble inside sigma-driven optimization
    double z_cap = 10.0;

    void validate() const {
        if (setups < 1) throw std::invalid_argument("setups must be >= 1");
        if (n < 2) throw std::invalid_argument("n must be >= 2");
        if (m_windows.empty()) throw std::invalid_argument("m_windows must not be empty");
        if (target_file.empty()) throw std::invalid_argument("target_file is required");
        if (kind == ExperimentKind::E4 && geo_file.empty())
            throw std::invalid_argument("geo_file is required for e4");
        if (kind == ExperimentKind::E3 && base_networks < 1)
            throw std::invalid_argument("base_networks must be >= 1");
        if (top_fraction <= 0.0 || top_fraction >= 1.0)
            throw std::invalid_argument("top_fraction must be in (0, 1)");
    }
};

struct ExperimentResult {
    std::vector<Table> tables;
    nlohmann::ordered_json manifest;

    const Table& table(const std::string& name) const {
        for (const Table& t : tables)
            if (t.name == name) return t;
        throw std::out_of_range("no table named '" + name + "'");
    }
};

inline void write_result(const ExperimentResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const Table& t : result.tables) write_csv(t, dir / (t.name + ".csv"));
    write_json(result.manifest, (dir / "run_manifest.json").string());
}

// ---------------------------------------------------------------------------
// Spec (de)serialization
// ---------------------------------------------------------------------------

inline ExperimentSpec default_spec(ExperimentKind kind) {
    ExperimentSpec s;
    s.kind = kind;
    switch (kind) {
        case ExperimentKind::E1:
            break;
        case ExperimentKind::E2:
            s.m_windows = {{16, 22}};
            s.generations = 100;
            break;
        case ExperimentKind::E3:
            s.m_windows = {{16, 22}};
            s.ensemble = 100;
            break;
        case ExperimentKind::E4:
            break;
    }
    return s;
}

inline nlohmann::ordered_json spec_to_json(const ExperimentSpec& s) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(s.kind);
    j["seed"] = s.seed;
    j["setups"] = s.setups;
    j["n"] = s.n;
    j["m_windows"] = s.m_windows;
    j["percentiles"] = {s.percentile_low, s.percentile_high};
    j["base_networks"] = s.base_networks;
    j["top_fraction"] = s.top_fraction;
    j["t_values"] = s.t_values;
    j["geo_file"] = s.geo_file;
    j["target_file"] = s.target_file;
    j["expand_budget"] = (s.expand_budget == ExpandBudget::OnePlusT ? "one_plus_t" : "t_times");
    j["length_cap_factor"] = s.length_cap_factor;
    j["optimizer"] = {{"population", s.population},
                      {"generations", s.generations},
                      {"mutation_size", s.mutation_size},
                      {"elite_fraction", s.elite_fraction},
                      {"random_fraction", s.random_fraction},
                      {"two_sided", s.two_sided}};
    j["null_model"] = {{"variant", to_string(s.null_model)},
                       {"ensemble", s.ensemble},
                       {"swaps_per_edge", s.swaps_per_edge},
                       {"search_ensemble", s.search_ensemble},
                       {"z_cap", s.z_cap}};
    return j;
}

inline ExperimentSpec spec_from_json(const nlohmann::json& j, const std::string& context) {
    if (!j.contains("kind")) throw SchemaError(context + ": missing field 'kind'");
    ExperimentSpec s = default_spec(experiment_kind_from_string(j["kind"].get<std::string>()));
    try {
        if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("setups")) s.setups = j["setups"].get<int>();
        if (j.contains("n")) s.n = j["n"].get<int>();
        if (j.contains("m_windows"))
            s.m_windows = j["m_windows"].get<std::vector<std::pair<int, int>>>();
        if (j.contains("percentiles")) {
            const auto p = j["percentiles"].get<std::vector<double>>();
            if (p.size() != 2) throw SchemaError(context + ": percentiles must be [low, high]");
            s.percentile_low = p[0];
            s.percentile_high = p[1];
        }
        if (j.contains("base_networks")) s.base_networks = j["base_networks"].get<int>();
        if (j.contains("top_fraction")) s.top_fraction = j["top_fraction"].get<double>();
        if (j.contains("t_values")) s.t_values = j["t_values"].get<std::vector<double>>();
        if (j.contains("geo_file")) s.geo_file = j["geo_file"].get<std::string>();
        if (j.contains("target_file")) s.target_file = j["target_file"].get<std::string>();
        if (j.contains("expand_budget")) {
            const std::string b = j["expand_budget"].get<std::string>();
            if (b == "one_plus_t") s.expand_budget = ExpandBudget::OnePlusT;
            else if (b == "t_times") s.expand_budget = ExpandBudget::TTimes;
            else throw SchemaError(context + ": expand_budget must be one_plus_t or t_times");
        }
        if (j.contains("length_cap_factor")) s.length_cap_factor = j["length_cap_factor"].get<double>();
        if (j.contains("optimizer")) {
            const auto& o = j["optimizer"];
            if (o.contains("population")) s.population = o["population"].get<int>();
            if (o.contains("generations")) s.generations = o["generations"].get<int>();
            if (o.contains("mutation_size")) s.mutation_size = o["mutation_size"].get<int>();
            if (o.contains("elite_fraction")) s.elite_fraction = o["elite_fraction"].get<double>();
            if (o.contains("random_fraction")) s.random_fraction = o["random_fraction"].get<double>();
            if (o.contains("two_sided")) s.two_sided = o["two_sided"].get<bool>();
        }
        if (j.contains("null_model")) {
            const auto& m = j["null_model"];
            if (m.contains("variant")) s.null_model = null_model_from_string(m["variant"].get<std::string>());
            if (m.contains("ensemble")) s.ensemble = m["ensemble"].get<int>();
            if (m.contains("swaps_per_edge")) s.swaps_per_edge = m["swaps_per_edge"].get<int>();
            if (m.contains("search_ensemble")) s.search_ensemble = m["search_ensemble"].get<int>();
            if (m.contains("z_cap")) s.z_cap = m["z_cap"].get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(context + ": " + e.what());
    }
    return s;
}

inline ExperimentSpec load_experiment_spec(const std::string& path) {
    ExperimentSpec s = spec_from_json(detail::parse_file(path), path);
    s.validate();
    return s;
}

/// Commented spec template for `experiment spec --kind K --template`.
/// The run subcommand parses spec files with comments enabled.
inline std::string spec_template(ExperimentKind kind) {
    ExperimentSpec s = default_spec(kind);
    s.target_file = "data/target_signature.json";
    if (kind == ExperimentKind::E4) s.geo_file = "data/geo_fixture.json";
    std::string head;
    switch (kind) {
        case ExperimentKind::E1:
            head = "// e1: (cost, robustness) optimization per edge window; percentile-sampled\n"
                   "// vulnerable/robust networks and their motif z-score distributions.\n";
            break;
        case ExperimentKind::E2:
            head = "// e2: (cost, sigma) optimization with an edge-length cap derived from the\n"
                   "// setup's connectivity threshold (length_cap_factor * largest MST edge).\n";
            break;
        case ExperimentKind::E3:
            head = "// e3: single-edge insertion sweep over random d = 1 base networks; splits\n"
                   "// insertions into high/low groups by delta c07 / z07 / sigma and compares\n"
                   "// the mean robustness gain of the groups.\n";
            break;
        case ExperimentKind::E4:
            head = "// e4: neighborhood expansion of geo product subnetworks over the t grid,\n"
                   "// with per-t Spearman/Pearson correlation between r and sigma.\n";
            break;
    }
    std::string body = spec_to_json(s).dump(2);
    return head +
           "// Unset fields fall back to the defaults shown here. target_file is required;\n"
           "// geo_file is required for e4.\n" +
           body + "\n";
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

/// Largest edge of the Euclidean MST over all nodes: the smallest uniform
/// length bound under which the setup is connectable.
inline double connectivity_threshold(const Setup& setup) {
    std::vector<int> ids(static_cast<std::size_t>(setup.size()));
    std::iota(ids.begin(), ids.end(), 0);
    const auto mst = detail::euclidean_mst(setup, ids);
    double longest = 0.0;
    for (const Edge& e : mst.edges) longest = std::max(longest, setup.distance(e.from, e.to));
    return longest;
}

namespace detail {

constexpr std::uint64_t kTagSetup = 0x5e75;
constexpr std::uint64_t kTagGa = 0x6a00;
constexpr std::uint64_t kTagSig = 0x5160;
constexpr std::uint64_t kTagBase = 0xba5e;

inline GaConfig base_ga_config(const ExperimentSpec& spec, std::pair<int, int> window) {
    GaConfig ga;
    ga.population_size = spec.population;
    ga.generations = spec.generations;
    ga.m_min = window.first;
    ga.m_max = window.second;
    ga.mutation_size = spec.mutation_size;
    ga.elite_fraction = spec.elite_fraction;
    ga.random_fraction = spec.random_fraction;
    ga.two_sided = spec.two_sided;
    return ga;
}

inline NullModelConfig base_null_config(const ExperimentSpec& spec) {
    NullModelConfig cfg;
    cfg.variant = spec.null_model;
    cfg.ensemble_size = spec.ensemble;
    cfg.swaps_per_edge = spec.swaps_per_edge;
    cfg.z_cap = spec.z_cap;
    return cfg;
}

inline void require_consistent(const ParetoArchive& archive, const GaConfig& ga) {
    if (!archive.members.empty() && !archive_is_consistent(archive, ga))
        throw std::logic_error("optimizer emitted an inconsistent archive");
}

/// Archive member whose r is nearest the percentile target; ties prefer the
/// cheaper network, then the lexicographically smaller edge set.
inline const EvaluatedMember& nearest_by_robustness(const ParetoArchive& archive, double target) {
    const EvaluatedMember* best = nullptr;
    for (const EvaluatedMember& m : archive.members) {
        if (!best) {
            best = &m;
            continue;
        }
        const double da = std::fabs(m.metrics.robustness - target);
        const double db = std::fabs(best->metrics.robustness - target);
        if (da < db ||
            (da == db && (m.metrics.cost < best->metrics.cost ||
                          (m.metrics.cost == best->metrics.cost && m.net.edges() < best->net.edges()))))
            best = &m;
    }
    return *best;
}

inline nlohmann::ordered_json base_manifest(const ExperimentSpec& spec) {
    nlohmann::ordered_json m;
    m["kind"] = to_string(spec.kind);
    m["seed"] = spec.seed;
    m["version"] = kVersion;
    m["spec"] = spec_to_json(spec);
    return m;
}

}  // namespace detail

inline std::vector<Setup> experiment_setups(const ExperimentSpec& spec) {
    std::vector<Setup> setups;
    setups.reserve(static_cast<std::size_t>(spec.setups));
    for (int s = 0; s < spec.setups; ++s)
        setups.push_back(generate_setup(spec.n, 1, spec.n / 2,
                                        derive_seed(spec.seed, detail::kTagSetup,
                                                    static_cast<std::uint64_t>(s))));
    return setups;
}

// ---------------------------------------------------------------------------
// E1: robustness optimization and motif signatures of sampled extremes
// ---------------------------------------------------------------------------

inline ExperimentResult run_E1(const ExperimentSpec& spec) {
    spec.validate();
    const TargetSignature target = load_target_signature(spec.target_file);
    const std::vector<Setup> setups = experiment_setups(spec);

    Table front{"front",
                {"m_min", "m_max", "setup_id", "setup_seed", "member_id", "c", "r", "m"},
                {}};
    Table zscores{"zscores",
                  {"m_min", "m_max", "setup_id", "setup_seed", "group", "class", "z"},
                  {}};
    Table zsummary{"zscores_summary",
                   {"m_min", "m_max", "group", "class", "mean_z", "std_z", "n"},
                   {}};
    Table sigma_vs_r{"sigma_vs_r",
                     {"m_min", "m_max", "setup_id", "setup_seed", "group", "target_r", "r", "c",
                      "m", "sigma", "status"},
                     {}};

    int empty_archives = 0;
    for (std::size_t w = 0; w < spec.m_windows.size(); ++w) {
        const auto window = spec.m_windows[w];
        std::vector<ParetoArchive> archives;
        std::vector<double> pooled_r;
        for (int s = 0; s < spec.setups; ++s) {
            GaConfig ga = detail::base_ga_config(spec, window);
            ga.objective = Objective::CostRobustness;
            ga.seed = derive_seed(spec.seed, detail::kTagGa, w, static_cast<std::uint64_t>(s));
            ParetoArchive archive = evolve(setups[static_cast<std::size_t>(s)], ga);
            detail::require_consistent(archive, ga);
            for (std::size_t i = 0; i < archive.members.size(); ++i) {
                const auto& m = archive.members[i];
                front.add({csv_int(window.first), csv_int(window.second), csv_int(s),
                           csv_int(static_cast<long long>(setups[static_cast<std::size_t>(s)].rng_seed)),
                           csv_int(static_cast<long long>(i)), csv_num(m.metrics.cost),
                           csv_num(m.metrics.robustness), csv_int(m.metrics.edges)});
                pooled_r.push_back(m.metrics.robustness);
            }
            archives.push_back(std::move(archive));
        }

        std::map<std::pair<std::string, int>, std::vector<double>> summary_z;
        if (pooled_r.empty()) {
            for (int s = 0; s < spec.setups; ++s) {
                ++empty_archives;
                sigma_vs_r.add({csv_int(window.first), csv_int(window.second), csv_int(s),
                                csv_int(static_cast<long long>(setups[static_cast<std::size_t>(s)].rng_seed)),
                                "", csv_num(std::numeric_limits<double>::quiet_NaN()),
                                csv_num(std::numeric_limits<double>::quiet_NaN()),
                                csv_num(std::numeric_limits<double>::quiet_NaN()),
                                csv_int(0), csv_num(std::numeric_limits<double>::quiet_NaN()),
                                "empty_archive"});
            }
            continue;
        }
        const double r_low = percentile(pooled_r, spec.percentile_low);
        const double r_high = percentile(pooled_r, spec.percentile_high);

        for (int s = 0; s < spec.setups; ++s) {
            const Setup& setup = setups[static_cast<std::size_t>(s)];
            const ParetoArchive& archive = archives[static_cast<std::size_t>(s)];
            if (archive.members.empty()) {
                ++empty_archives;
                for (const char* group : {"vulnerable", "robust"}) {
                    sigma_vs_r.add({csv_int(window.first), csv_int(window.second), csv_int(s),
                                    csv_int(static_cast<long long>(setup.rng_seed)), group,
                                    csv_num(group[0] == 'v' ? r_low : r_high),
                                    csv_num(std::numeric_limits<double>::quiet_NaN()),
                                    csv_num(std::numeric_limits<double>::quiet_NaN()), csv_int(0),
                                    csv_num(std::numeric_limits<double>::quiet_NaN()),
                                    "empty_archive"});
                }
                continue;
            }
            const struct {
                const char* name;
                double target_r;
            } groups[2] = {{"vulnerable", r_low}, {"robust", r_high}};
            for (int g = 0; g < 2; ++g) {
                const EvaluatedMember& pick = detail::nearest_by_robustness(archive, groups[g].target_r);
                NullModelConfig nm = detail::base_null_config(spec);
                nm.seed = derive_seed(spec.seed, detail::kTagSig, w, static_cast<std::uint64_t>(s),
                                      static_cast<std::uint64_t>(g));
                const MotifSignature sig = motif_signature(pick.net, nm);
                const double sigma = signature_strength(sig, target);
                for (int c = 0; c < triads::kClassCount; ++c) {
                    zscores.add({csv_int(window.first), csv_int(window.second), csv_int(s),
                                 csv_int(static_cast<long long>(setup.rng_seed)), groups[g].name,
                                 csv_int(c + 1), csv_num(sig.z[static_cast<std::size_t>(c)])});
                    summary_z[{groups[g].name, c + 1}].push_back(sig.z[static_cast<std::size_t>(c)]);
                }
                sigma_vs_r.add({csv_int(window.first), csv_int(window.second), csv_int(s),
                                csv_int(static_cast<long long>(setup.rng_seed)), groups[g].name,
                                csv_num(groups[g].target_r), csv_num(pick.metrics.robustness),
                                csv_num(pick.metrics.cost), csv_int(pick.metrics.edges),
                                csv_num(sigma), "ok"});
            }
        }
        for (const char* group : {"vulnerable", "robust"}) {
            for (int c = 1; c <= triads::kClassCount; ++c) {
                const auto it = summary_z.find({group, c});
                if (it == summary_z.end()) continue;
                zsummary.add({csv_int(window.first), csv_int(window.second), group, csv_int(c),
                              csv_num(mean(it->second)), csv_num(sample_stddev(it->second)),
                              csv_int(static_cast<long long>(it->second.size()))});
            }
        }
    }

    ExperimentResult res;
    res.tables = {front, zscores, zsummary, sigma_vs_r};
    res.manifest = detail::base_manifest(spec);
    res.manifest["empty_archives"] = empty_archives;
    res.manifest["tables"] = {"front", "zscores", "zscores_summary", "sigma_vs_r"};
    return res;
}

// ---------------------------------------------------------------------------
// E2: (cost, sigma) optimization under the spatial-locality edge cap
// ---------------------------------------------------------------------------

inline ExperimentResult run_E2(const ExperimentSpec& spec) {
    spec.validate();
    const TargetSignature target = load_target_signature(spec.target_file);
    const std::vector<Setup> setups = experiment_setups(spec);
    const auto window = spec.m_windows.front();

    Table front{"front",
                {"setup_id", "setup_seed", "member_id", "c", "sigma", "r", "m", "length_cap"},
                {}};
    Table sigma_vs_r{"sigma_vs_r", {"setup_id", "setup_seed", "member_id", "r", "sigma"}, {}};

    int empty_archives = 0;
    for (int s = 0; s < spec.setups; ++s) {
        const Setup& setup = setups[static_cast<std::size_t>(s)];
        const double cap = spec.length_cap_factor * connectivity_threshold(setup);
        GaConfig ga = detail::base_ga_config(spec, window);
        ga.objective = Objective::CostSigma;
        ga.edge_length_cap = cap;
        ga.target = target;
        ga.sigma_search_ensemble = spec.search_ensemble;
        ga.motif_cfg = detail::base_null_config(spec);
        ga.motif_cfg.seed = derive_seed(spec.seed, detail::kTagSig, static_cast<std::uint64_t>(s));
        ga.seed = derive_seed(spec.seed, detail::kTagGa, static_cast<std::uint64_t>(s));

        ParetoArchive archive = evolve(setup, ga);
        detail::require_consistent(archive, ga);
        if (archive.members.empty()) ++empty_archives;
        for (std::size_t i = 0; i < archive.members.size(); ++i) {
            const auto& m = archive.members[i];
            front.add({csv_int(s), csv_int(static_cast<long long>(setup.rng_seed)),
                       csv_int(static_cast<long long>(i)), csv_num(m.metrics.cost), csv_num(m.sigma),
                       csv_num(m.metrics.robustness), csv_int(m.metrics.edges), csv_num(cap)});
            sigma_vs_r.add({csv_int(s), csv_int(static_cast<long long>(setup.rng_seed)),
                            csv_int(static_cast<long long>(i)), csv_num(m.metrics.robustness),
                            csv_num(m.sigma)});
        }
    }

    ExperimentResult res;
    res.tables = {front, sigma_vs_r};
    res.manifest = detail::base_manifest(spec);
    res.manifest["empty_archives"] = empty_archives;
    res.manifest["tables"] = {"front", "sigma_vs_r"};
    return res;
}

// ---------------------------------------------------------------------------
// E3: heuristic edge insertion guided by c07 / z07 / sigma
// ---------------------------------------------------------------------------

/// Random network with d = 1: a random recursive arborescence rooted at the
/// producer covering all demanders (plus a random subset of intermediates),
/// padded with uniformly random extra edges up to the requested edge count.
/// Rejection sampling of uniform random networks is hopeless here: at the
/// paper's densities (N = 20, M <= 22) the fraction of random digraphs with
/// d = 1 is far below any practical attempt budget.
inline Network random_satisfying_network(const SetupPtr& setup, int m, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    const std::vector<int> demanders = setup->demanders();
    const std::vector<int> producers = setup->producers();
    if (producers.size() != 1)
        throw std::invalid_argument("random_satisfying_network expects exactly one producer");
    const int tree_terminals = static_cast<int>(demanders.size());
    if (m < tree_terminals)
        throw std::invalid_argument("edge count too small to satisfy every demander");

    std::vector<int> intermediates = setup->intermediates();
    const int spare = std::min(static_cast<int>(intermediates.size()), m - tree_terminals);
    const int extra_nodes = spare > 0 ? static_cast<int>(rand_index(rng, static_cast<std::uint64_t>(spare + 1))) : 0;
    std::vector<int> members;
    for (std::size_t idx : sample_indices(rng, intermediates.size(), static_cast<std::size_t>(extra_nodes)))
        members.push_back(intermediates[idx]);
    for (int d : demanders) members.push_back(d);
    shuffle_vec(rng, members);

    std::vector<Edge> edges;
    std::vector<int> attached{producers.front()};
    for (int v : members) {
        const int parent = attached[static_cast<std::size_t>(rand_index(rng, attached.size()))];
        edges.push_back(Edge{parent, v});
        attached.push_back(v);
    }

    std::sort(edges.begin(), edges.end());
    std::vector<Edge> absent;
    for (const Edge& e : admissible_edges(*setup, std::nullopt))
        if (!std::binary_search(edges.begin(), edges.end(), e)) absent.push_back(e);
    const std::size_t pad = static_cast<std::size_t>(m) - edges.size();
    if (pad > absent.size())
        throw std::invalid_argument("edge count exceeds the admissible universe");
    for (std::size_t idx : sample_indices(rng, absent.size(), pad)) edges.push_back(absent[idx]);
    return Network(setup, std::move(edges));
}

inline ExperimentResult run_E3(const ExperimentSpec& spec) {
    spec.validate();
    const TargetSignature target = load_target_signature(spec.target_file);
    const auto window = spec.m_windows.front();

    Table deltas{"deltas", {"base_id", "base_seed", "criterion", "group", "mean_dr", "n"}, {}};
    Table insertions{"insertions",
                     {"base_id", "base_seed", "edge_from", "edge_to", "dc07", "dz07", "dsigma", "dr"},
                     {}};

    struct InsertionDelta {
        Edge edge;
        double dc07, dz07, dsigma, dr;
    };

    for (int b = 0; b < spec.base_networks; ++b) {
        const std::uint64_t base_seed = derive_seed(spec.seed, detail::kTagBase, static_cast<std::uint64_t>(b));
        Rng rng = make_rng(base_seed);
        auto setup = std::make_shared<Setup>(
            generate_setup(spec.n, 1, spec.n / 2, derive_seed(base_seed, 0x9e0)));
        const int m = window.first +
                      static_cast<int>(rand_index(rng, static_cast<std::uint64_t>(window.second - window.first + 1)));
        const Network base = random_satisfying_network(setup, m, derive_seed(base_seed, 0xba));

        NullModelConfig nm = detail::base_null_config(spec);
        nm.seed = derive_seed(base_seed, 0x51);
        const TriadCensus base_census = triad_census(base);
        const MotifSignature base_sig = motif_signature(base, nm);
        const double base_sigma = signature_strength(base_sig, target);
        const double base_r = robustness(base).value;

        std::vector<Edge> candidates;
        {
            const std::vector<Edge>& existing = base.edges();
            for (const Edge& e : admissible_edges(*setup, std::nullopt))
                if (!std::binary_search(existing.begin(), existing.end(), e)) candidates.push_back(e);
        }

        std::vector<InsertionDelta> results(candidates.size());
        parallel_for(candidates.size(), [&](std::size_t i) {
            const Network extended = base.with_edge(candidates[i]);
            const TriadCensus census = triad_census(extended);
            // Same null-model seed as the base: common random numbers keep the
            // delta estimates from drowning in ensemble noise.
            const MotifSignature sig = motif_signature(extended, nm);
            InsertionDelta& out = results[i];
            out.edge = candidates[i];
            out.dc07 = static_cast<double>(census.count(triads::kFeedForwardLoop) -
                                           base_census.count(triads::kFeedForwardLoop));
            out.dz07 = sig.z[triads::kFeedForwardLoop - 1] - base_sig.z[triads::kFeedForwardLoop - 1];
            out.dsigma = signature_strength(sig, target) - base_sigma;
            out.dr = robustness(extended).value - base_r;
        });

        for (const InsertionDelta& d : results)
            insertions.add({csv_int(b), csv_int(static_cast<long long>(base_seed)), csv_int(d.edge.from),
                            csv_int(d.edge.to), csv_num(d.dc07), csv_num(d.dz07), csv_num(d.dsigma),
                            csv_num(d.dr)});

        // Group split per criterion: c07 by strictly positive delta, z07 and
        // sigma by the top `top_fraction` of insertions.
        auto add_groups = [&](const char* criterion, const std::vector<char>& in_high) {
            double sum_high = 0.0, sum_low = 0.0;
            long long n_high = 0, n_low = 0;
            for (std::size_t i = 0; i < results.size(); ++i) {
                if (in_high[i]) {
                    sum_high += results[i].dr;
                    ++n_high;
                } else {
                    sum_low += results[i].dr;
                    ++n_low;
                }
            }
            deltas.add({csv_int(b), csv_int(static_cast<long long>(base_seed)), criterion, "high",
                        csv_num(n_high ? sum_high / static_cast<double>(n_high)
                                       : std::numeric_limits<double>::quiet_NaN()),
                        csv_int(n_high)});
            deltas.add({csv_int(b), csv_int(static_cast<long long>(base_seed)), criterion, "low",
                        csv_num(n_low ? sum_low / static_cast<double>(n_low)
                                      : std::numeric_limits<double>::quiet_NaN()),
                        csv_int(n_low)});
        };

        {
            std::vector<char> high(results.size(), 0);
            for (std::size_t i = 0; i < results.size(); ++i) high[i] = results[i].dc07 > 0.0;
            add_groups("c07", high);
        }
        auto top_fraction_split = [&](auto delta_of) {
            std::vector<std::size_t> order(results.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                const double da = delta_of(results[a]), db = delta_of(results[b]);
                if (da != db) return da > db;
                return results[a].edge < results[b].edge;
            });
            const std::size_t k = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::llround(spec.top_fraction * static_cast<double>(results.size()))));
            std::vector<char> high(results.size(), 0);
            for (std::size_t i = 0; i < std::min(k, order.size()); ++i) high[order[i]] = 1;
            return high;
        };
        add_groups("z07", top_fraction_split([](const InsertionDelta& d) { return d.dz07; }));
        add_groups("sigma", top_fraction_split([](const InsertionDelta& d) { return d.dsigma; }));
    }

    ExperimentResult res;
    res.tables = {deltas, insertions};
    res.manifest = detail::base_manifest(spec);
    res.manifest["tables"] = {"deltas", "insertions"};
    return res;
}

// ---------------------------------------------------------------------------
// E4: geo subnetworks, neighborhood expansion, r-sigma correlation vs t
// ---------------------------------------------------------------------------

inline ExperimentResult run_E4(const ExperimentSpec& spec) {
    spec.validate();
    const TargetSignature target = load_target_signature(spec.target_file);
    const GeoNetwork geo = import_geo_network(spec.geo_file);

    Table scatter{"sigma_vs_r",
                  {"t", "product", "active_nodes", "m", "d", "r", "sigma", "included"},
                  {}};
    Table correlations{"correlations",
                       {"t", "n", "spearman_rho", "spearman_p", "pearson_rho", "pearson_p"},
                       {}};

    int excluded = 0;
    for (std::size_t ti = 0; ti < spec.t_values.size(); ++ti) {
        const double t = spec.t_values[ti];
        std::vector<double> rs, sigmas;
        for (std::size_t pi = 0; pi < geo.products.size(); ++pi) {
            const GeoProduct& product = geo.products[pi];
            const Network expanded = expand_neighborhood(product.direct, t, spec.expand_budget);
            const Metrics m = evaluate(expanded);

            std::vector<char> active(static_cast<std::size_t>(expanded.setup().size()), 0);
            for (const Edge& e : expanded.edges())
                active[static_cast<std::size_t>(e.from)] = active[static_cast<std::size_t>(e.to)] = 1;
            const int active_n = static_cast<int>(std::count(active.begin(), active.end(), 1));

            const bool included = active_n >= 3 && m.edges >= 2;
            double sigma = std::numeric_limits<double>::quiet_NaN();
            if (included) {
                NullModelConfig nm = detail::base_null_config(spec);
                nm.seed = derive_seed(spec.seed, detail::kTagSig, ti, pi);
                sigma = signature_strength(motif_signature(expanded, nm), target);
                rs.push_back(m.robustness);
                sigmas.push_back(sigma);
            } else {
                ++excluded;
            }
            scatter.add({csv_num(t), product.name, csv_int(active_n), csv_int(m.edges),
                         csv_num(m.demand), csv_num(m.robustness), csv_num(sigma),
                         included ? "1" : "0"});
        }
        CorrelationTest sp, pe;
        if (rs.size() >= 3) {
            sp = spearman(rs, sigmas);
            pe = pearson_test(rs, sigmas);
        }
        correlations.add({csv_num(t), csv_int(static_cast<long long>(rs.size())), csv_num(sp.rho),
                          csv_num(sp.p), csv_num(pe.rho), csv_num(pe.p)});
    }

    ExperimentResult res;
    res.tables = {scatter, correlations};
    res.manifest = detail::base_manifest(spec);
    res.manifest["excluded_subnetworks"] = excluded;
    res.manifest["tables"] = {"sigma_vs_r", "correlations"};
    return res;
}

inline ExperimentResult run_experiment(const ExperimentSpec& spec) {
    switch (spec.kind) {
        case ExperimentKind::E1: return run_E1(spec);
        case ExperimentKind::E2: return run_E2(spec);
        case ExperimentKind::E3: return run_E3(spec);
        case ExperimentKind::E4: return run_E4(spec);
    }
    throw std::logic_error("unreachable experiment kind");
}

}  // namespace suppnet
