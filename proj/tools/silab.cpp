// silab: Monte Carlo laboratory for SI / first-passage percolation spreading
// with heavy-tailed passage times on random graphs.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "silab/ensemble.hpp"
#include "silab/er.hpp"
#include "silab/errors.hpp"
#include "silab/experiments.hpp"
#include "silab/graph.hpp"
#include "silab/gw.hpp"
#include "silab/kappa.hpp"
#include "silab/thresholds.hpp"
#include "silab/wilson.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

int run_cli(const std::vector<std::string>& args); // forward, for rerun

std::string default_out_dir() {
    if (const char* env = std::getenv("SILAB_OUT")) return env;
    return ".";
}

void write_json_file(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw silab::DataError("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
}

void write_manifest(const fs::path& dir, const std::vector<std::string>& argv,
                    const json& resolved) {
    json m;
    m["tool"] = "silab";
    m["version"] = kVersion;
    m["thresholds_version"] = silab::kThresholdsVersion;
    m["argv"] = argv;
    m["resolved"] = resolved;
    write_json_file(dir / "manifest.json", m);
}

silab::OffspringLaw parse_offspring(const std::string& name) {
    if (name == "poisson1") return silab::OffspringLaw::poisson1();
    if (name == "geometric-half") return silab::OffspringLaw::geometric_half();
    if (name.rfind("binomial", 0) == 0)
        return silab::OffspringLaw::binomial_critical(
            static_cast<unsigned>(std::stoul(name.substr(8))));
    throw CLI::ValidationError("--offspring", "unknown offspring law: " + name);
}

struct GenerateOpts {
    std::string model;
    std::string offspring = "poisson1";
    std::uint32_t depth = 100;
    std::uint32_t n = 1000;
    double lambda = 0.0;
    std::uint64_t seed = 0;
    bool extra_edge = false;
    std::uint32_t root = 0;
    std::string out = default_out_dir();
};

json do_generate(const GenerateOpts& o) {
    fs::create_directories(o.out);
    silab::RngStream rng(o.seed, silab::kGraphStreamBase);
    json meta;
    meta["model"] = o.model;
    meta["master_seed"] = o.seed;
    meta["stream_index"] = silab::kGraphStreamBase;

    std::unique_ptr<silab::RootedGraph> g;
    if (o.model == "gw-conditioned") {
        const silab::OffspringLaw law = parse_offspring(o.offspring);
        const silab::ConditionedSample cs = silab::sample_gw_conditioned(law, o.depth, rng);
        meta["params"] = {{"offspring", o.offspring}, {"depth", o.depth},
                          {"extra_edge", o.extra_edge}};
        meta["attempts"] = cs.attempts;
        meta["tree_size"] = cs.tree.size();
        meta["height"] = cs.tree.height;
        if (o.extra_edge)
            g = std::make_unique<silab::RootedGraph>(silab::add_root_edge(cs.tree, rng));
        else
            g = std::make_unique<silab::RootedGraph>(cs.tree.to_rooted_graph());
    } else if (o.model == "ust") {
        const silab::ColoredUstResult w = silab::sample_ust_colored(o.n, rng);
        meta["params"] = {{"n", o.n}};
        meta["red_count"] = w.red_count;
        meta["blue_count"] = w.blue_count;
        meta["first_path_length"] = w.first_path_length;
        g = std::make_unique<silab::RootedGraph>(w.graph);
    } else if (o.model == "er") {
        const silab::ErSample er = silab::sample_er(o.n, o.lambda, rng);
        meta["params"] = {{"n", o.n}, {"lambda", o.lambda}};
        meta["p"] = er.p;
        meta["largest_cluster_size"] = er.largest.n();
        meta["surplus"] = er.surplus;
        meta["cluster_sizes_top"] =
            std::vector<std::uint32_t>(er.cluster_sizes.begin(),
                                       er.cluster_sizes.begin() +
                                           std::min<std::size_t>(5, er.cluster_sizes.size()));
        g = std::make_unique<silab::RootedGraph>(er.largest);
    } else if (o.model == "uniform-tree") {
        meta["params"] = {{"n", o.n}};
        g = std::make_unique<silab::RootedGraph>(silab::sample_uniform_tree(o.n, rng, o.root));
    } else if (o.model == "path" || o.model == "cycle" || o.model == "star") {
        meta["params"] = {{"n", o.n}, {"root", o.root}};
        if (o.model == "path") g = std::make_unique<silab::RootedGraph>(silab::path_graph(o.n, o.root));
        if (o.model == "cycle") g = std::make_unique<silab::RootedGraph>(silab::cycle_graph(o.n, o.root));
        if (o.model == "star") g = std::make_unique<silab::RootedGraph>(silab::star_graph(o.n, o.root));
    } else {
        throw CLI::ValidationError("--model", "unknown model: " + o.model);
    }

    silab::write_edge_list_file((fs::path(o.out) / "graph.edges").string(), *g);
    meta["n"] = g->n();
    meta["m"] = g->m();
    meta["root"] = g->root();
    write_json_file(fs::path(o.out) / "metadata.json", meta);
    std::cout << "wrote " << (fs::path(o.out) / "graph.edges").string() << " (n=" << g->n()
              << ", m=" << g->m() << ")\n";
    return meta;
}

struct CurveOpts {
    std::string graph_file;
    std::string model; // optional generator instead of a file
    GenerateOpts gen;
    double alpha = 0.8;
    std::string law = "pow";
    double t0 = 1.0;
    std::uint32_t runs = 1000;
    std::uint32_t batches = 20;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string regen = "fixed";
    std::string out = default_out_dir();
};

json do_curve(const CurveOpts& o) {
    fs::create_directories(o.out);
    silab::EnsembleSpec spec;
    spec.law = o.law == "pow" ? silab::WeightLaw::power(o.alpha, o.t0)
                              : silab::WeightLaw::shifted(o.alpha);
    spec.runs = o.runs;
    spec.batches = o.batches;
    spec.master_seed = o.seed;
    spec.workers = o.workers;
    spec.keep_increments = true;
    spec.mode = o.regen == "fresh" ? silab::RegenMode::FreshGraph : silab::RegenMode::FixedGraph;

    if (!o.graph_file.empty()) {
        spec.graph = std::make_shared<const silab::RootedGraph>(
            silab::read_edge_list_file(o.graph_file));
        spec.mode = silab::RegenMode::FixedGraph;
    } else if (!o.model.empty()) {
        const GenerateOpts gen = o.gen;
        const std::string model = o.model;
        spec.generator = [gen, model](silab::RngStream& rng) -> silab::RootedGraph {
            if (model == "gw-conditioned") {
                const silab::OffspringLaw law = parse_offspring(gen.offspring);
                const silab::ConditionedSample cs =
                    silab::sample_gw_conditioned(law, gen.depth, rng);
                if (gen.extra_edge) return silab::add_root_edge(cs.tree, rng);
                return cs.tree.to_rooted_graph();
            }
            if (model == "ust") return silab::sample_ust_colored(gen.n, rng).graph;
            if (model == "er") return silab::sample_er(gen.n, gen.lambda, rng).largest;
            if (model == "uniform-tree") return silab::sample_uniform_tree(gen.n, rng);
            if (model == "path") return silab::path_graph(gen.n, gen.root);
            if (model == "cycle") return silab::cycle_graph(gen.n, gen.root);
            if (model == "star") return silab::star_graph(gen.n, gen.root);
            throw silab::ParameterError("unknown model: " + model);
        };
    } else {
        throw CLI::ValidationError("curve", "need --graph or --model");
    }

    const silab::CurveStats st = silab::run_ensemble(spec);
    {
        std::ofstream csv(fs::path(o.out) / "curve.csv");
        silab::write_curve_csv(csv, st);
    }

    const auto hit = silab::plateau_detect(st);
    const silab::PlateauThresholds th = silab::default_plateau_thresholds();
    json plateau;
    plateau["first_unstable_k"] = hit ? json(*hit) : json(nullptr);
    plateau["thresholds"] = {{"cv", th.cv},
                             {"max_share", th.max_share},
                             {"front_cap", th.front_cap},
                             {"provenance", "pilot-calibrated"}};
    plateau["n"] = st.n;
    plateau["runs"] = st.runs;
    write_json_file(fs::path(o.out) / "plateau.json", plateau);
    std::cout << "wrote " << (fs::path(o.out) / "curve.csv").string() << "; first unstable k: "
              << (hit ? std::to_string(*hit) : std::string("none")) << "\n";

    json resolved;
    resolved["alpha"] = o.alpha;
    resolved["law"] = o.law;
    resolved["runs"] = o.runs;
    resolved["batches"] = o.batches;
    resolved["seed"] = o.seed;
    resolved["regen"] = o.regen;
    return resolved;
}

struct ExperimentOpts {
    std::string id;
    double alpha = 0.8;
    std::uint32_t n = 0;
    std::uint32_t runs = 0;
    std::uint32_t kmax = 512;
    std::uint32_t depth = 100;
    std::string offspring = "poisson1";
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string out = default_out_dir();
};

silab::TheoremReport dispatch_experiment(const ExperimentOpts& o) {
    using namespace silab;
    auto runs_or = [&](std::uint32_t d) { return o.runs ? o.runs : d; };
    auto n_or = [&](std::uint32_t d) { return o.n ? o.n : d; };
    if (o.id == "cycle-scaling")
        return experiment_cycle_scaling(o.alpha, n_or(512), runs_or(2000), o.seed, o.workers);
    if (o.id == "star-scaling")
        return experiment_star_scaling(o.alpha, {64, 256, 1024}, runs_or(5000), o.seed, o.workers);
    if (o.id == "q-scaling")
        return experiment_q_scaling(o.alpha, o.kmax, runs_or(20000), o.seed, o.workers);
    if (o.id == "gw-tightness")
        return experiment_gw_tightness(parse_offspring(o.offspring), {50, 100, 200},
                                       runs_or(2000), o.seed, o.workers);
    if (o.id == "gw-extra-edge")
        return experiment_gw_extra_edge(parse_offspring(o.offspring), o.depth, runs_or(2000),
                                        o.seed, o.workers);
    if (o.id == "ust") return experiment_ust(n_or(2000), runs_or(500), o.seed, o.workers);
    if (o.id == "er")
        return experiment_er(n_or(10000), 3 * n_or(10000), runs_or(300), o.seed, o.workers);
    if (o.id == "urn") return experiment_urn(n_or(2000), runs_or(1000), o.seed, o.workers);
    throw CLI::ValidationError("experiment", "unknown experiment id: " + o.id);
}

int do_kappa(const std::string& file, bool per_vertex, unsigned d) {
    const silab::RootedGraph g = silab::read_edge_list_file(file);
    const silab::KappaProfile prof = silab::kappa(g, per_vertex);
    std::cout << "n=" << g.n() << " m=" << g.m() << " root=" << g.root() << "\n";
    std::cout << "kappa(G,root) = " << prof.kappa_at_root << "\n";
    if (prof.bridges.empty()) {
        std::cout << "no bridges (2-edge-connected): kappa = n\n";
    } else {
        std::cout << "bridges (edge root_side far_side):\n";
        for (const auto& b : prof.bridges) {
            const auto [u, v] = g.edge(b.edge);
            std::cout << "  e" << b.edge << "=(" << u << "," << v << ") " << b.root_side << " "
                      << b.far_side << "\n";
        }
    }
    if (per_vertex) {
        const auto [argmax, value] = silab::max_kappa_over_roots(g);
        std::cout << "max kappa over roots: vertex " << argmax << " value " << value << "\n";
    }
    if (d >= 2) {
        std::cout << "kappa_" << d << "(G,root) = " << silab::kappa_d(g, d) << "\n";
    }
    return 0;
}

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"silab: SI/FPP spreading laboratory with heavy-tailed passage times"};
    app.set_config("--config");
    app.require_subcommand(1);

    GenerateOpts gen;
    auto* cgen = app.add_subcommand("generate", "sample a graph and write it as an edge list");
    cgen->add_option("--model", gen.model,
                     "gw-conditioned | ust | er | uniform-tree | path | cycle | star")
        ->required();
    cgen->add_option("--offspring", gen.offspring, "poisson1 | geometric-half | binomialK");
    cgen->add_option("--depth", gen.depth, "conditioning depth N for gw-conditioned");
    cgen->add_option("--n", gen.n, "vertex count");
    cgen->add_option("--lambda", gen.lambda, "ER window parameter");
    cgen->add_option("--seed", gen.seed, "master seed");
    cgen->add_option("--root", gen.root, "root vertex for fixtures");
    cgen->add_flag("--extra-edge", gen.extra_edge, "add the random root edge (gw-conditioned)");
    cgen->add_option("--out", gen.out, "output directory");

    std::string kappa_file;
    bool kappa_per_vertex = false;
    unsigned kappa_dflag = 0;
    auto* ckappa = app.add_subcommand("kappa", "bottleneck index report for a graph file");
    ckappa->add_option("--graph", kappa_file, "edge-list file")->required();
    ckappa->add_flag("--per-vertex", kappa_per_vertex, "also compute kappa for every root");
    ckappa->add_option("--d", kappa_dflag, "also compute kappa_d (enumerative)");

    CurveOpts curve;
    auto* ccurve = app.add_subcommand("curve", "spreading-curve ensemble and plateau report");
    ccurve->add_option("--graph", curve.graph_file, "edge-list file (FixedGraph mode)");
    ccurve->add_option("--model", curve.model, "generator model instead of a file");
    ccurve->add_option("--offspring", curve.gen.offspring, "offspring law for gw-conditioned");
    ccurve->add_option("--depth", curve.gen.depth, "depth for gw-conditioned");
    ccurve->add_option("--n", curve.gen.n, "size for generator models");
    ccurve->add_option("--lambda", curve.gen.lambda, "ER lambda");
    ccurve->add_flag("--extra-edge", curve.gen.extra_edge, "gw-conditioned extra root edge");
    ccurve->add_option("--alpha", curve.alpha, "passage-time exponent");
    ccurve->add_option("--law", curve.law, "pow | shiftpow");
    ccurve->add_option("--t0", curve.t0, "PowerLaw cutoff");
    ccurve->add_option("--runs", curve.runs, "ensemble size M");
    ccurve->add_option("--batches", curve.batches, "batch count B");
    ccurve->add_option("--seed", curve.seed, "master seed");
    ccurve->add_option("--workers", curve.workers, "worker threads (0 = hardware)");
    ccurve->add_option("--regen", curve.regen, "fixed | fresh graph per run");
    ccurve->add_option("--out", curve.out, "output directory");

    ExperimentOpts exp;
    auto* cexp = app.add_subcommand("experiment", "run a theorem-level experiment");
    cexp->add_option("id", exp.id,
                     "gw-tightness | gw-extra-edge | ust | er | urn | q-scaling | "
                     "cycle-scaling | star-scaling")
        ->required();
    cexp->add_option("--alpha", exp.alpha, "passage-time exponent");
    cexp->add_option("--n", exp.n, "primary size parameter");
    cexp->add_option("--runs", exp.runs, "Monte Carlo runs");
    cexp->add_option("--kmax", exp.kmax, "Q-process length");
    cexp->add_option("--depth", exp.depth, "GW conditioning depth");
    cexp->add_option("--offspring", exp.offspring, "offspring law");
    cexp->add_option("--seed", exp.seed, "master seed");
    cexp->add_option("--workers", exp.workers, "worker threads");
    cexp->add_option("--out", exp.out, "output directory");

    std::string manifest_path, rerun_out;
    auto* crerun = app.add_subcommand("rerun", "re-execute a run from its manifest");
    crerun->add_option("manifest", manifest_path, "manifest.json path")->required();
    crerun->add_option("--out", rerun_out, "override output directory");

    auto* cthr = app.add_subcommand("thresholds", "print the versioned defaults registry");

    std::vector<const char*> argv;
    argv.push_back("silab");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    std::vector<std::string> argv_record(args.begin(), args.end());

    if (cgen->parsed()) {
        const json resolved = do_generate(gen);
        write_manifest(gen.out, argv_record, resolved);
        return 0;
    }
    if (ckappa->parsed()) return do_kappa(kappa_file, kappa_per_vertex, kappa_dflag);
    if (ccurve->parsed()) {
        const json resolved = do_curve(curve);
        write_manifest(curve.out, argv_record, resolved);
        return 0;
    }
    if (cexp->parsed()) {
        fs::create_directories(exp.out);
        const silab::TheoremReport rep = dispatch_experiment(exp);
        write_json_file(fs::path(exp.out) / "report.json", rep.to_json());
        write_manifest(exp.out, argv_record, rep.params);
        std::cout << rep.experiment << ": " << (rep.pass() ? "pass" : "fail") << "\n";
        for (const auto& c : rep.checks)
            std::cout << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << " = " << c.value
                      << " (want " << c.constraint << ")\n";
        return rep.pass() ? 0 : 4;
    }
    if (crerun->parsed()) {
        std::ifstream in(manifest_path);
        if (!in) throw silab::DataError("cannot open manifest: " + manifest_path);
        json m = json::parse(in);
        std::vector<std::string> stored = m.at("argv").get<std::vector<std::string>>();
        if (!rerun_out.empty()) {
            for (std::size_t i = 0; i + 1 < stored.size(); ++i)
                if (stored[i] == "--out") stored[i + 1] = rerun_out;
        }
        return run_cli(stored);
    }
    if (cthr->parsed()) {
        for (const auto& t : silab::all_thresholds())
            std::cout << t.key << " = " << t.value << "  [" << silab::provenance_name(t.provenance)
                      << "] " << t.note << "\n";
        return 0;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return run_cli(args);
    } catch (const silab::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const silab::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const silab::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const silab::StructuralError& e) {
        std::cerr << "structural error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
