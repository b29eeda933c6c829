// Command-line harness for the supply-network model library.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "suppnet/suppnet.hpp"

namespace {

using namespace suppnet;

int run_gen_setup(int n, int producers, int demanders, std::uint64_t seed, const std::string& out) {
    const Setup setup = generate_setup(n, producers, demanders, seed);
    write_json(to_json(setup), out);
    std::cout << "wrote " << out << " (" << n << " nodes, " << producers << " producers, "
              << demanders << " demanders)\n";
    return 0;
}

int run_solve_min_cost(const std::string& setup_file, const std::string& out) {
    const Setup setup = load_setup(setup_file);
    const Network net = solve_min_cost(setup);
    write_json(to_json(net), out);
    const Metrics m = evaluate(net);
    std::cout << "wrote " << out << ": c=" << csv_num(m.cost) << " d=" << csv_num(m.demand)
              << " m=" << m.edges << "\n";
    return 0;
}

int run_motifs(const std::string& network_file, const std::string& variant, int ensemble,
               int swaps, std::uint64_t seed, const std::string& target_file) {
    const Network net = load_network(network_file);
    const TargetSignature target = load_target_signature(target_file);
    NullModelConfig cfg;
    cfg.variant = null_model_from_string(variant);
    cfg.ensemble_size = ensemble;
    cfg.swaps_per_edge = swaps;
    cfg.seed = seed;

    const TriadCensus census = triad_census(net);
    const MotifSignature sig = motif_signature(net, cfg);
    const double sigma = signature_strength(sig, target);

    nlohmann::ordered_json out;
    out["counts"] = census.counts;
    out["z"] = sig.z;
    out["sp"] = sig.sp;
    out["sigma"] = sigma;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_optimize(const std::string& setup_file, const std::string& objective, int m_min, int m_max,
                 int generations, int population, std::uint64_t seed,
                 std::optional<double> cap_factor, bool two_sided, const std::string& target_file,
                 int ensemble, int search_ensemble, const std::string& variant, int swaps,
                 const std::string& out_dir) {
    const Setup setup = load_setup(setup_file);
    GaConfig ga;
    ga.population_size = population;
    ga.generations = generations;
    ga.m_min = m_min;
    ga.m_max = m_max;
    ga.two_sided = two_sided;
    ga.seed = seed;
    double cap = 0.0;
    if (cap_factor) {
        cap = *cap_factor * connectivity_threshold(setup);
        ga.edge_length_cap = cap;
    }
    if (objective == "csigma") {
        ga.objective = Objective::CostSigma;
        ga.target = load_target_signature(target_file);
        ga.motif_cfg.variant = null_model_from_string(variant);
        ga.motif_cfg.ensemble_size = ensemble;
        ga.motif_cfg.swaps_per_edge = swaps;
        ga.motif_cfg.seed = derive_seed(seed, 0x516);
        ga.sigma_search_ensemble = search_ensemble;
    } else if (objective != "cr") {
        throw CLI::ValidationError("--objective must be cr or csigma");
    }

    const ParetoArchive archive = evolve(setup, ga);
    std::filesystem::create_directories(out_dir);

    Table front{"front", {"member_id", "c", "r", "sigma", "m"}, {}};
    nlohmann::ordered_json networks;
    networks["setup"] = to_json(setup);
    networks["critical_value"] = archive.critical_value;
    networks["members"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < archive.members.size(); ++i) {
        const EvaluatedMember& m = archive.members[i];
        front.add({csv_int(static_cast<long long>(i)), csv_num(m.metrics.cost),
                   csv_num(m.metrics.robustness),
                   std::isfinite(m.sigma) ? csv_num(m.sigma) : std::string{},
                   csv_int(m.metrics.edges)});
        nlohmann::ordered_json jm;
        jm["id"] = i;
        jm["edges"] = nlohmann::ordered_json::array();
        for (const Edge& e : m.net.edges()) jm["edges"].push_back({e.from, e.to});
        jm["c"] = m.metrics.cost;
        jm["r"] = m.metrics.robustness;
        if (std::isfinite(m.sigma)) jm["sigma"] = m.sigma;
        jm["m"] = m.metrics.edges;
        networks["members"].push_back(std::move(jm));
    }
    write_csv(front, std::filesystem::path(out_dir) / "front.csv");
    write_json(networks, (std::filesystem::path(out_dir) / "networks.json").string());

    if (archive.members.empty())
        std::cout << "archive empty: " << archive.diagnostic << "\n";
    else
        std::cout << "archive size " << archive.members.size() << ", critical value "
                  << csv_num(archive.critical_value) << (cap_factor ? ", length cap " + csv_num(cap) : "")
                  << "\n";
    std::cout << "wrote " << out_dir << "/front.csv and networks.json\n";
    return 0;
}

int run_experiment_run(const std::string& spec_file, const std::string& out_dir) {
    const ExperimentSpec spec = load_experiment_spec(spec_file);
    const ExperimentResult result = run_experiment(spec);
    write_result(result, out_dir);
    std::cout << "experiment " << to_string(spec.kind) << " finished; tables:";
    for (const Table& t : result.tables) std::cout << " " << t.name << ".csv";
    std::cout << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spatial supply-network model: metrics, motifs, optimization, experiments"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)")
        ->capture_default_str();

    // gen-setup
    auto* gen = app.add_subcommand("gen-setup", "Generate a random setup file");
    int gen_n = 20, gen_p = 1, gen_d = 10;
    std::uint64_t gen_seed = 1;
    std::string gen_out = "setup.json";
    gen->add_option("--n", gen_n, "Node count")->capture_default_str();
    gen->add_option("--producers", gen_p, "Producer count")->capture_default_str();
    gen->add_option("--demanders", gen_d, "Demander count")->capture_default_str();
    gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
    gen->add_option("--out", gen_out, "Output file")->capture_default_str();

    // solve-min-cost
    auto* solve = app.add_subcommand("solve-min-cost", "Min-cost d = 1 network heuristic");
    std::string solve_setup, solve_out = "network.json";
    solve->add_option("--setup", solve_setup, "Setup file")->required();
    solve->add_option("--out", solve_out, "Output network file")->capture_default_str();

    // motifs
    auto* motifs_cmd = app.add_subcommand("motifs", "Triad census and motif signature");
    std::string mot_net, mot_variant = "mutual", mot_target = "data/target_signature.json";
    int mot_ensemble = 500, mot_swaps = 10;
    std::uint64_t mot_seed = 1;
    motifs_cmd->add_option("--network", mot_net, "Network file")->required();
    motifs_cmd->add_option("--null-model", mot_variant, "mutual | nomutual | demand")
        ->capture_default_str();
    motifs_cmd->add_option("--ensemble", mot_ensemble, "Ensemble size")->capture_default_str();
    motifs_cmd->add_option("--swaps", mot_swaps, "Switch attempts per edge")->capture_default_str();
    motifs_cmd->add_option("--seed", mot_seed, "RNG seed")->capture_default_str();
    motifs_cmd->add_option("--target", mot_target, "Target signature file")->capture_default_str();

    // optimize
    auto* opt = app.add_subcommand("optimize", "Multi-objective network optimization");
    std::string opt_setup, opt_objective = "cr", opt_out = "opt_out";
    std::string opt_target = "data/target_signature.json", opt_variant = "mutual";
    int opt_mmin = 16, opt_mmax = 22, opt_gens = 150, opt_pop = 200;
    int opt_ensemble = 500, opt_search = 100, opt_swaps = 10;
    std::uint64_t opt_seed = 1;
    double opt_cap_factor = 0.0;
    bool opt_one_sided = false;
    opt->add_option("--setup", opt_setup, "Setup file")->required();
    opt->add_option("--objective", opt_objective, "cr | csigma")->capture_default_str();
    opt->add_option("--mmin", opt_mmin, "Minimum edge count")->capture_default_str();
    opt->add_option("--mmax", opt_mmax, "Maximum edge count")->capture_default_str();
    opt->add_option("--generations", opt_gens, "Generations")->capture_default_str();
    opt->add_option("--pop", opt_pop, "Population size")->capture_default_str();
    opt->add_option("--seed", opt_seed, "RNG seed")->capture_default_str();
    opt->add_option("--length-cap-factor", opt_cap_factor,
                    "Edge length cap as a multiple of the connectivity threshold (0 = none)")
        ->capture_default_str();
    opt->add_flag("--one-sided", opt_one_sided, "Disable the two-sided secondary objective");
    opt->add_option("--target", opt_target, "Target signature file (csigma)")->capture_default_str();
    opt->add_option("--ensemble", opt_ensemble, "Full ensemble size (csigma)")->capture_default_str();
    opt->add_option("--search-ensemble", opt_search, "In-run ensemble size (csigma)")
        ->capture_default_str();
    opt->add_option("--null-model", opt_variant, "mutual | nomutual | demand")->capture_default_str();
    opt->add_option("--swaps", opt_swaps, "Switch attempts per edge")->capture_default_str();
    opt->add_option("--out", opt_out, "Output directory")->capture_default_str();

    // experiment
    auto* exp = app.add_subcommand("experiment", "Run or template the bundled experiments");
    exp->require_subcommand(1);
    auto* exp_run = exp->add_subcommand("run", "Run an experiment spec");
    std::string exp_spec, exp_out = "experiment_out";
    exp_run->add_option("--spec", exp_spec, "Spec file (JSON, comments allowed)")->required();
    exp_run->add_option("--out", exp_out, "Output directory")->capture_default_str();
    auto* exp_tpl = exp->add_subcommand("spec", "Print a commented spec template");
    std::string tpl_kind = "e1";
    bool tpl_flag = false;
    exp_tpl->add_option("--kind", tpl_kind, "e1 | e2 | e3 | e4")->capture_default_str();
    exp_tpl->add_flag("--template", tpl_flag, "Print the template (default action)");

    CLI11_PARSE(app, argc, argv);
    suppnet::set_thread_count(threads);

    try {
        if (gen->parsed()) return run_gen_setup(gen_n, gen_p, gen_d, gen_seed, gen_out);
        if (solve->parsed()) return run_solve_min_cost(solve_setup, solve_out);
        if (motifs_cmd->parsed())
            return run_motifs(mot_net, mot_variant, mot_ensemble, mot_swaps, mot_seed, mot_target);
        if (opt->parsed()) {
            std::optional<double> cap;
            if (opt_cap_factor > 0.0) cap = opt_cap_factor;
            return run_optimize(opt_setup, opt_objective, opt_mmin, opt_mmax, opt_gens, opt_pop,
                                opt_seed, cap, !opt_one_sided, opt_target, opt_ensemble, opt_search,
                                opt_variant, opt_swaps, opt_out);
        }
        if (exp->parsed()) {
            if (exp_run->parsed()) return run_experiment_run(exp_spec, exp_out);
            std::cout << spec_template(experiment_kind_from_string(tpl_kind));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
