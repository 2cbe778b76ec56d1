// netsparse: edge sparsification by algebraic distance, single- and
// multilevel, with structural comparison reports and benchmarks.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netsparse/algdist.hpp"
#include "netsparse/graph.hpp"
#include "netsparse/graph_io.hpp"
#include "netsparse/metrics.hpp"
#include "netsparse/multilevel.hpp"
#include "netsparse/parallel.hpp"
#include "netsparse/rng.hpp"
#include "netsparse/sparsify.hpp"

namespace ns = netsparse;
using nlohmann::json;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --threads beats NETSPARSE_THREADS beats single-threaded default.
void apply_threads(int flag_value) {
    int t = 1;
    if (const char* env = std::getenv("NETSPARSE_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) t = v;
    }
    if (flag_value > 0) t = flag_value;
    ns::set_num_threads(t);
}

ns::Graph load_input(const std::string& path, const std::string& format) {
    if (format == "edgelist") return ns::load_graph_file(path, ns::GraphFormat::EdgeList);
    if (format == "mm") return ns::load_graph_file(path, ns::GraphFormat::MatrixMarket);
    return ns::load_graph_file(path);  // auto: by extension
}

void write_metadata(const std::string& artifact_path, const json& meta) {
    std::ofstream out(artifact_path + ".json");
    if (!out) throw std::runtime_error("cannot write metadata for " + artifact_path);
    out << meta.dump(2) << '\n';
}

std::vector<double> parse_csv_doubles(const std::string& s) {
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            vals.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw CLI::ValidationError("expected a comma-separated list of numbers: " + s);
        }
    }
    if (vals.empty()) throw CLI::ValidationError("empty number list");
    return vals;
}

struct LinearFit {
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinearFit f;
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double pred = f.intercept + f.slope * x[i];
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

// ---- sparsify ----------------------------------------------------------

struct SparsifyArgs {
    std::string input, output, format = "auto";
    std::string mode = "keep-strong", scorer = "algdist", scores_out;
    double e = 0.5, alpha = 0.5;
    int sweeps = 10, iters = 40, repetitions = 1, threads = 0;
    bool normalized = false;
    std::uint64_t seed = 1;
};

ns::SparsifyMode parse_mode(const std::string& s) {
    if (s == "keep-strong") return ns::SparsifyMode::KeepStrong;
    if (s == "keep-weak") return ns::SparsifyMode::KeepWeak;
    if (s == "mixture") return ns::SparsifyMode::Mixture;
    throw CLI::ValidationError("unknown mode '" + s + "'");
}

ns::ScorerKind parse_scorer(const std::string& s) {
    if (s == "algdist") return ns::ScorerKind::AlgDist;
    if (s == "local-degree") return ns::ScorerKind::LocalDegree;
    if (s == "jaccard") return ns::ScorerKind::Jaccard;
    if (s == "random") return ns::ScorerKind::Random;
    throw CLI::ValidationError("unknown scorer '" + s + "'");
}

void run_sparsify(const SparsifyArgs& a) {
    apply_threads(a.threads);
    const ns::Graph g = load_input(a.input, a.format);

    ns::SparsifyPlan plan;
    plan.e = a.e;
    plan.mode = parse_mode(a.mode);
    plan.scorer = parse_scorer(a.scorer);
    plan.algdist = {a.alpha, a.sweeps, a.iters, 1e-12, a.normalized, a.seed};

    json runs = json::array();
    double ratio_sum = 0.0;
    for (int rep = 0; rep < a.repetitions; ++rep) {
        ns::SparsifyPlan p = plan;
        p.seed = rep == 0 ? a.seed : ns::hash_combine(a.seed, 0x5eedULL, rep);
        p.algdist.seed = p.seed;

        const auto t0 = std::chrono::steady_clock::now();
        const ns::EdgeScores scores = ns::compute_scores(g, p);
        const ns::Graph sparse = p.mode == ns::SparsifyMode::Mixture
                                     ? ns::sparsify_binned(g, scores, p)
                                     : ns::sparsify_single(g, scores, p);
        const double elapsed = seconds_since(t0);
        const double ratio = g.num_edges() == 0
                                 ? 1.0
                                 : double(sparse.num_edges()) / double(g.num_edges());
        ratio_sum += ratio;
        runs.push_back({{"seed", p.seed},
                        {"edge_ratio", ratio},
                        {"edges", sparse.num_edges()},
                        {"seconds", elapsed}});
        if (rep == 0) {
            ns::write_graph_file(sparse, a.output);
            if (!a.scores_out.empty()) {
                std::ofstream sout(a.scores_out);
                if (!sout) throw std::runtime_error("cannot open " + a.scores_out);
                ns::write_scores(g, scores, sout);
            }
        }
    }

    json meta = {{"command", "sparsify"},
                 {"input", a.input},
                 {"output", a.output},
                 {"n", g.num_nodes()},
                 {"m", g.num_edges()},
                 {"mode", a.mode},
                 {"scorer", a.scorer},
                 {"e", a.e},
                 {"normalized", a.normalized},
                 {"alpha", a.alpha},
                 {"sweeps", a.sweeps},
                 {"iters", a.iters},
                 {"seed", a.seed},
                 {"threads", ns::num_threads()},
                 {"repetitions", a.repetitions},
                 {"runs", runs},
                 {"mean_edge_ratio", ratio_sum / a.repetitions}};
    write_metadata(a.output, meta);
    std::cout << "wrote " << a.output << " (mean edge ratio "
              << ratio_sum / a.repetitions << ")\n";
}

// ---- ml-sparsify -------------------------------------------------------

struct MlArgs {
    std::string input, output, format = "auto";
    std::string levels, preset, hierarchy_out, dump_levels;
    std::string target_ratio;
    double e = 0.3, alpha = 0.5, coupling = 0.5;
    int sweeps = 10, iters = 40, span = 3, threads = 0;
    unsigned coarsest = 100;
    bool normalized = false;
    std::uint64_t seed = 1;
};

void run_ml_sparsify(const MlArgs& a) {
    apply_threads(a.threads);
    const ns::Graph g = load_input(a.input, a.format);

    ns::AlgDistParams params{a.alpha, a.sweeps, a.iters, 1e-12, a.normalized, a.seed};
    ns::SparsifyPlan plan;
    plan.mode = ns::SparsifyMode::Mixture;
    plan.algdist = params;
    plan.seed = a.seed;
    ns::MultilevelOptions opts{a.coarsest, a.coupling};

    const auto t0 = std::chrono::steady_clock::now();
    const ns::Hierarchy h = ns::build_hierarchy(g, params, opts);

    ns::LevelConfig cfg;
    if (!a.levels.empty()) {
        cfg.ratios = parse_csv_doubles(a.levels);
        cfg.validate();
    } else if (!a.preset.empty()) {
        ns::Preset p = a.preset == "coarsest" ? ns::Preset::Coarsest
                       : a.preset == "middle" ? ns::Preset::Middle
                       : a.preset == "finest" ? ns::Preset::Finest
                                              : throw CLI::ValidationError(
                                                    "unknown preset '" + a.preset + "'");
        cfg = ns::preset_config(h.depth(), p, a.span, a.e);
    } else {
        throw CLI::ValidationError("need --levels or --preset");
    }

    json fit_info;
    if (!a.target_ratio.empty()) {
        const auto t = parse_csv_doubles(a.target_ratio);
        if (t.size() != 2) throw CLI::ValidationError("--target-ratio expects lo,hi");
        const ns::FitResult fr = ns::fit_ratio(h, cfg, t[0], t[1], params, plan);
        cfg = fr.config;
        fit_info = {{"target", {t[0], t[1]}},
                    {"fitted_e", fr.e},
                    {"realized", fr.realized},
                    {"hit", fr.hit},
                    {"probes", fr.probes}};
        if (!fr.hit)
            std::cerr << "warning: target ratio unreachable, closest e=" << fr.e
                      << " gives ratio " << fr.realized << "\n";
    }

    const ns::Graph sparse = ns::ml_solve(h, cfg, params, plan);
    const double elapsed = seconds_since(t0);

    ns::write_graph_file(sparse, a.output);
    if (!a.hierarchy_out.empty()) {
        std::ofstream out(a.hierarchy_out);
        if (!out) throw std::runtime_error("cannot open " + a.hierarchy_out);
        ns::write_hierarchy_summary(h, out);
    } else {
        ns::write_hierarchy_summary(h, std::cout);
    }
    if (!a.dump_levels.empty()) {
        for (std::size_t l = 0; l < h.depth(); ++l)
            ns::write_graph_file(h.levels[l].graph,
                                 a.dump_levels + ".level" + std::to_string(l) + ".el");
    }

    const double ratio =
        g.num_edges() == 0 ? 1.0 : double(sparse.num_edges()) / double(g.num_edges());
    json meta = {{"command", "ml-sparsify"},
                 {"input", a.input},
                 {"output", a.output},
                 {"n", g.num_nodes()},
                 {"m", g.num_edges()},
                 {"depth", h.depth()},
                 {"levels", cfg.ratios},
                 {"coarsest_size", a.coarsest},
                 {"coupling", a.coupling},
                 {"normalized", a.normalized},
                 {"alpha", a.alpha},
                 {"sweeps", a.sweeps},
                 {"iters", a.iters},
                 {"seed", a.seed},
                 {"threads", ns::num_threads()},
                 {"edge_ratio", ratio},
                 {"seconds", elapsed}};
    if (!fit_info.is_null()) meta["fit"] = fit_info;
    write_metadata(a.output, meta);
    std::cout << "wrote " << a.output << " (edge ratio " << ratio << ", depth "
              << h.depth() << ")\n";
}

// ---- compare -----------------------------------------------------------

struct CompareArgs {
    std::string original, sparse, format = "auto";
    std::string json_out, csv_out, tag = "G1", name;
    std::uint64_t seed = 1;
    unsigned pivots = 0;
    int reps = 10, threads = 0;
};

void run_compare(const CompareArgs& a) {
    apply_threads(a.threads);
    const ns::Graph g_o = load_input(a.original, a.format);
    const ns::Graph g_s = load_input(a.sparse, a.format);

    ns::CompareOptions opts;
    opts.seed = a.seed;
    opts.pivots = a.pivots;
    opts.betweenness_reps = a.reps;
    const ns::ComparisonReport rep = ns::compare(g_o, g_s, opts);

    const std::string j = ns::report_to_json(rep);
    std::cout << j << '\n';
    if (!a.json_out.empty()) {
        std::ofstream out(a.json_out);
        if (!out) throw std::runtime_error("cannot open " + a.json_out);
        out << j << '\n';
    }
    if (!a.csv_out.empty()) {
        std::ofstream out(a.csv_out);
        if (!out) throw std::runtime_error("cannot open " + a.csv_out);
        const std::string name = a.name.empty() ? a.original : a.name;
        out << ns::report_csv_header() << '\n'
            << ns::report_csv_row(rep, name, a.tag) << '\n';
    }
}

// ---- bench -------------------------------------------------------------

struct BenchArgs {
    std::string sizes = "10000,32000,100000,320000,1000000";
    std::string algo = "both", out, thread_sweep;
    double e = 0.5;
    std::uint64_t seed = 1;
    int threads = 0;
};

ns::Graph bench_graph(std::size_t target_edges, std::uint64_t seed) {
    // cliques of 20 nodes (190 edges) plus one bridge each: constant average
    // degree, so edge count scales the instance linearly
    const std::size_t clusters = std::max<std::size_t>(2, target_edges / 191);
    return ns::generate_planted_partition(static_cast<ns::NodeId>(clusters), 20, clusters,
                                          seed);
}

void run_bench(const BenchArgs& a) {
    apply_threads(a.threads);
    const auto sizes = parse_csv_doubles(a.sizes);
    std::ostringstream csv;
    csv << "series,x,seconds\n";

    std::vector<double> ms_single, ts_single, ms_ml, ts_ml;
    for (double sz : sizes) {
        const ns::Graph g = bench_graph(static_cast<std::size_t>(sz), a.seed);
        const double m = static_cast<double>(g.num_edges());

        if (a.algo == "both" || a.algo == "single") {
            ns::SparsifyPlan plan;
            plan.mode = ns::SparsifyMode::Mixture;
            plan.e = a.e;
            plan.seed = a.seed;
            plan.algdist.seed = a.seed;
            const auto t0 = std::chrono::steady_clock::now();
            const ns::EdgeScores scores = ns::compute_algdist(g, plan.algdist);
            const ns::Graph sparse = ns::sparsify_binned(g, scores, plan);
            const double t = seconds_since(t0);
            (void)sparse;
            ms_single.push_back(m);
            ts_single.push_back(t);
            csv << "single," << m << ',' << t << '\n';
            std::cerr << "single m=" << m << " " << t << "s\n";
        }
        if (a.algo == "both" || a.algo == "ml") {
            ns::AlgDistParams params;
            params.seed = a.seed;
            ns::SparsifyPlan plan;
            plan.mode = ns::SparsifyMode::Mixture;
            plan.seed = a.seed;
            ns::LevelConfig cfg;
            cfg.ratios = {a.e};  // coarsest level only
            const auto t0 = std::chrono::steady_clock::now();
            const ns::Graph sparse = ns::ml_sparsify(g, cfg, params, plan);
            const double t = seconds_since(t0);
            (void)sparse;
            ms_ml.push_back(m);
            ts_ml.push_back(t);
            csv << "ml," << m << ',' << t << '\n';
            std::cerr << "ml m=" << m << " " << t << "s\n";
        }
    }

    if (ms_single.size() >= 2) {
        const LinearFit f = least_squares(ms_single, ts_single);
        csv << "# fit single: seconds = " << f.slope << "*m + " << f.intercept
            << ", R2 = " << f.r2 << '\n';
    }
    if (ms_ml.size() >= 2) {
        const LinearFit f = least_squares(ms_ml, ts_ml);
        csv << "# fit ml: seconds = " << f.slope << "*m + " << f.intercept
            << ", R2 = " << f.r2 << '\n';
    }

    if (!a.thread_sweep.empty()) {
        const auto threads = parse_csv_doubles(a.thread_sweep);
        const ns::Graph g = bench_graph(static_cast<std::size_t>(sizes.back()), a.seed);
        ns::AlgDistParams params;
        params.seed = a.seed;
        for (double tv : threads) {
            ns::set_num_threads(static_cast<int>(tv));
            const auto t0 = std::chrono::steady_clock::now();
            const ns::EdgeScores s = ns::compute_algdist(g, params);
            const double t = seconds_since(t0);
            (void)s;
            csv << "algdist_threads," << static_cast<int>(tv) << ',' << t << '\n';
            std::cerr << "algdist threads=" << static_cast<int>(tv) << " " << t << "s\n";
        }
        apply_threads(a.threads);  // restore
    }

    if (a.out.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(a.out);
        if (!out) throw std::runtime_error("cannot open " + a.out);
        out << csv.str();
        std::cout << "wrote " << a.out << '\n';
    }
}

// ---- gen ---------------------------------------------------------------

struct GenArgs {
    std::string output;
    unsigned clusters = 3, size = 10;
    std::size_t inter = 3;
    std::uint64_t seed = 1;
};

void run_gen(const GenArgs& a) {
    const ns::Graph g = ns::generate_planted_partition(a.clusters, a.size, a.inter, a.seed);
    ns::write_graph_file(g, a.output);
    json meta = {{"command", "gen"},         {"output", a.output},
                 {"clusters", a.clusters},   {"size", a.size},
                 {"inter_edges", a.inter},   {"seed", a.seed},
                 {"n", g.num_nodes()},       {"m", g.num_edges()}};
    write_metadata(a.output, meta);
    std::cout << "wrote " << a.output << " (n=" << g.num_nodes() << ", m=" << g.num_edges()
              << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph sparsification by algebraic distance"};
    app.require_subcommand(1);

    SparsifyArgs sp;
    auto* c_sp = app.add_subcommand("sparsify", "single-level edge sparsification");
    c_sp->add_option("input", sp.input, "input graph file")->required();
    c_sp->add_option("output", sp.output, "output edge list")->required();
    c_sp->add_option("--format", sp.format, "auto|edgelist|mm");
    c_sp->add_option("--mode", sp.mode, "keep-strong|keep-weak|mixture");
    c_sp->add_option("--scorer", sp.scorer, "algdist|local-degree|jaccard|random");
    c_sp->add_option("--e", sp.e, "retention exponent in [0,1]")->check(CLI::Range(0.0, 1.0));
    c_sp->add_flag("--normalized", sp.normalized, "normalize delta by sqrt(d_i*d_j)");
    c_sp->add_option("--alpha", sp.alpha, "JOR relaxation weight")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9));
    c_sp->add_option("--sweeps", sp.sweeps, "number of test vectors R")
        ->check(CLI::PositiveNumber);
    c_sp->add_option("--iters", sp.iters, "JOR iterations per vector k")
        ->check(CLI::NonNegativeNumber);
    c_sp->add_option("--seed", sp.seed, "rng seed");
    c_sp->add_option("--repetitions", sp.repetitions, "repeat with derived seeds");
    c_sp->add_option("--threads", sp.threads, "worker threads (flag beats env)");
    c_sp->add_option("--scores-out", sp.scores_out, "write 'u v delta' scores here");
    c_sp->callback([&] { run_sparsify(sp); });

    MlArgs ml;
    auto* c_ml = app.add_subcommand("ml-sparsify", "multilevel sparsification");
    c_ml->add_option("input", ml.input, "input graph file")->required();
    c_ml->add_option("output", ml.output, "output edge list")->required();
    c_ml->add_option("--format", ml.format, "auto|edgelist|mm");
    c_ml->add_option("--levels", ml.levels,
                     "coarsest-first exponents, -1 skips (e.g. \"0.3,0.3,-1\")");
    c_ml->add_option("--preset", ml.preset, "coarsest|middle|finest");
    c_ml->add_option("--span", ml.span, "levels per preset segment");
    c_ml->add_option("--e", ml.e, "exponent used by --preset")->check(CLI::Range(0.0, 1.0));
    c_ml->add_option("--target-ratio", ml.target_ratio, "lo,hi edge-ratio interval to fit");
    c_ml->add_option("--coarsest-size", ml.coarsest, "coarsening stops at this many nodes");
    c_ml->add_option("--coupling", ml.coupling, "seed coupling threshold Q");
    c_ml->add_flag("--normalized", ml.normalized, "normalize algebraic distances");
    c_ml->add_option("--alpha", ml.alpha, "JOR relaxation weight")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9));
    c_ml->add_option("--sweeps", ml.sweeps, "number of test vectors R")
        ->check(CLI::PositiveNumber);
    c_ml->add_option("--iters", ml.iters, "JOR iterations per vector k")
        ->check(CLI::NonNegativeNumber);
    c_ml->add_option("--seed", ml.seed, "rng seed");
    c_ml->add_option("--threads", ml.threads, "worker threads");
    c_ml->add_option("--hierarchy-out", ml.hierarchy_out, "write level summary here");
    c_ml->add_option("--dump-levels", ml.dump_levels, "write per-level edge lists PREFIX");
    c_ml->callback([&] { run_ml_sparsify(ml); });

    CompareArgs cp;
    auto* c_cp = app.add_subcommand("compare", "compare original vs sparse graph");
    c_cp->add_option("original", cp.original, "original graph")->required();
    c_cp->add_option("sparse", cp.sparse, "sparsified graph")->required();
    c_cp->add_option("--format", cp.format, "auto|edgelist|mm");
    c_cp->add_option("--seed", cp.seed, "rng seed");
    c_cp->add_option("--pivots", cp.pivots, "betweenness pivot count (0 = auto)");
    c_cp->add_option("--reps", cp.reps, "betweenness repetitions");
    c_cp->add_option("--json", cp.json_out, "write report JSON here");
    c_cp->add_option("--csv", cp.csv_out, "write report CSV here");
    c_cp->add_option("--tag", cp.tag, "level tag for the CSV row");
    c_cp->add_option("--name", cp.name, "graph name for the CSV row");
    c_cp->add_option("--threads", cp.threads, "worker threads");
    c_cp->callback([&] { run_compare(cp); });

    BenchArgs be;
    auto* c_be = app.add_subcommand("bench", "runtime scaling benchmark");
    c_be->add_option("--sizes", be.sizes, "target edge counts");
    c_be->add_option("--algo", be.algo, "single|ml|both");
    c_be->add_option("--e", be.e, "exponent")->check(CLI::Range(0.0, 1.0));
    c_be->add_option("--seed", be.seed, "rng seed");
    c_be->add_option("--out", be.out, "CSV output path (default stdout)");
    c_be->add_option("--thread-sweep", be.thread_sweep,
                     "comma-separated thread counts to time algdist with");
    c_be->add_option("--threads", be.threads, "worker threads for the scaling runs");
    c_be->callback([&] { run_bench(be); });

    GenArgs gn;
    auto* c_gn = app.add_subcommand("gen", "generate a planted-partition graph");
    c_gn->add_option("output", gn.output, "output edge list")->required();
    c_gn->add_option("--clusters", gn.clusters, "number of cliques");
    c_gn->add_option("--size", gn.size, "nodes per clique");
    c_gn->add_option("--inter", gn.inter, "bridge edges");
    c_gn->add_option("--seed", gn.seed, "rng seed");
    c_gn->callback([&] { run_gen(gn); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const ns::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
