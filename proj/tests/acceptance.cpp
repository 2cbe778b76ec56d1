// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Returns nonzero if any
// non-informative criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "netsparse/algdist.hpp"
#include "netsparse/graph.hpp"
#include "netsparse/metrics.hpp"
#include "netsparse/multilevel.hpp"
#include "netsparse/parallel.hpp"
#include "netsparse/rng.hpp"
#include "netsparse/sparsify.hpp"
#include "test_util.hpp"

using namespace netsparse;

namespace {

std::string g_cli_path;  // set from argv[1]

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string fail(const std::string& msg) { return msg; }

#define EXPECT(cond, msg)                 \
    do {                                  \
        if (!(cond)) return fail(msg);    \
    } while (0)

// ---- criterion 1: structure separation ----------------------------------

std::string criterion_separation() {
    const double t0 = now_seconds();
    int strong_ok = 0, weak_ok = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = generate_planted_partition(3, 10, 3, seed);
        AlgDistParams params;  // alpha=0.5, R=10, k=40
        params.seed = seed;
        EdgeScores s = compute_algdist(g, params);

        SparsifyPlan plan;
        plan.e = 0.5;
        plan.seed = seed;
        plan.mode = SparsifyMode::KeepStrong;
        Graph strong = sparsify_single(g, s, plan);
        if (connected_components(strong).count >= 3) ++strong_ok;

        plan.mode = SparsifyMode::KeepWeak;
        Graph weak = sparsify_single(g, s, plan);
        std::size_t bridges = 0;
        for (const Edge& e : weak.edges())
            if (e.u / 10 != e.v / 10) ++bridges;
        if (bridges == 3 && connected_components(weak).count == 1) ++weak_ok;
    }
    const double elapsed = now_seconds() - t0;
    EXPECT(strong_ok >= 9, "keep-strong separated in only " + std::to_string(strong_ok) +
                               "/10 seeds");
    EXPECT(weak_ok >= 9,
           "keep-weak preserved connectivity in only " + std::to_string(weak_ok) +
               "/10 seeds");
    EXPECT(elapsed < 1.0, "took " + std::to_string(elapsed) + "s (budget 1s)");
    return "";
}

// ---- criterion 2: spearman oracle ----------------------------------------

double spearman_closed_form(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    auto rank_of = [&](const std::vector<double>& v) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> rank(n);
        for (std::size_t i = 0; i < n; ++i) rank[idx[i]] = double(i + 1);
        return rank;
    };
    auto rx = rank_of(x), ry = rank_of(y);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += (rx[i] - ry[i]) * (rx[i] - ry[i]);
    return 1.0 - 6.0 * sum / (double(n) * (double(n) * n - 1.0));
}

std::string criterion_spearman() {
    SplitMix64 rng(20240817);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = 2 + rng.bounded(49);
        std::vector<double> x(n), y(n);
        std::iota(x.begin(), x.end(), 1.0);
        std::iota(y.begin(), y.end(), 1.0);
        shuffle(x, rng);
        shuffle(y, rng);
        const double got = spearman(x, y);
        const double want = spearman_closed_form(x, y);
        EXPECT(std::abs(got - want) <= 1e-12,
               "closed-form mismatch " + std::to_string(got - want));
    }

    Graph g = generate_planted_partition(3, 10, 3, 5);
    auto r = compare(g, g);
    EXPECT(r.edge_ratio == 1.0, "edge ratio != 1 on identical graphs");
    EXPECT(r.diameter_ratio == 1.0, "diameter ratio != 1");
    EXPECT(r.components_ratio == 1.0, "components ratio != 1");
    EXPECT(r.modularity_ratio == 1.0, "modularity ratio != 1");
    for (double rho : {r.rho_betweenness, r.rho_pagerank, r.rho_degree, r.rho_clustering})
        EXPECT(std::abs(rho - 1.0) <= 1e-12, "rho != 1 on identical graphs");
    return "";
}

// ---- criterion 3: galerkin oracle ----------------------------------------

std::string criterion_galerkin() {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const NodeId n = 10 + static_cast<NodeId>(hash_combine(seed, 1) % 91);  // <= 100
        const std::size_t m = n + hash_combine(seed, 2) % (2 * n);
        Graph g = testutil::random_graph(n, m, seed);
        AlgDistParams params;
        params.seed = seed;
        EdgeScores s = compute_algdist(g, params);
        Restriction sel = select_seeds(g, s);
        if (sel.coarse_n == g.num_nodes()) continue;
        Restriction r = build_restriction(g, s, sel);

        // one nonzero per row: assignment is total and in range
        for (NodeId i = 0; i < g.num_nodes(); ++i)
            EXPECT(r.assignment[i] < r.coarse_n, "P row without assignment");

        Graph coarse = galerkin_coarsen(g, r);

        // dense P^T L P off-diagonals
        const NodeId cn = r.coarse_n;
        std::vector<std::vector<double>> Lc(cn, std::vector<double>(cn, 0.0));
        for (const Edge& e : g.edges()) {
            const NodeId a = r.assignment[e.u], b = r.assignment[e.v];
            Lc[a][a] += e.w;
            Lc[b][b] += e.w;
            Lc[a][b] -= e.w;
            Lc[b][a] -= e.w;
        }
        for (NodeId a = 0; a < cn; ++a)
            for (NodeId b = a + 1; b < cn; ++b) {
                auto e = coarse.edge_id(a, b);
                const double w = e ? coarse.edge(*e).w : 0.0;
                EXPECT(std::abs(-Lc[a][b] - w) < 1e-9, "coarse weight mismatch");
            }
    }
    return "";
}

// ---- criterion 4: single-level laws --------------------------------------

std::string criterion_single_level() {
    const std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const NodeId n = 30 + static_cast<NodeId>(seed);
        Graph g = testutil::random_graph(n, 4 * n, seed);
        AlgDistParams params;
        params.seed = seed;
        EdgeScores s = compute_algdist(g, params);

        SparsifyPlan plan;
        plan.mode = SparsifyMode::KeepStrong;
        plan.seed = seed;
        std::set<std::pair<NodeId, NodeId>> prev;
        for (double e : grid) {
            plan.e = e;
            Graph out = sparsify_single(g, s, plan);
            EXPECT(out.num_nodes() == g.num_nodes(), "node set changed");
            for (NodeId i = 0; i < g.num_nodes(); ++i)
                if (g.degree(i) > 0)
                    EXPECT(out.degree(i) >= 1, "non-isolated node lost all edges");
            std::set<std::pair<NodeId, NodeId>> cur;
            for (const Edge& ed : out.edges()) cur.insert({ed.u, ed.v});
            EXPECT(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()),
                   "edge sets not monotone in e");
            prev = std::move(cur);
            if (e == 1.0) EXPECT(out == g, "e=1 did not return the input graph");
        }

        // worker invariance of the full pipeline for a fixed seed
        plan.e = 0.5;
        set_num_threads(1);
        EdgeScores s1 = compute_algdist(g, params);
        Graph o1 = sparsify_single(g, s1, plan);
        Graph b1 = sparsify_binned(g, s1, plan);
        for (int t : {4, 8}) {
            set_num_threads(t);
            EdgeScores st = compute_algdist(g, params);
            EXPECT(st.delta == s1.delta, "scores differ across thread counts");
            EXPECT(sparsify_single(g, st, plan) == o1,
                   "ranked output differs across thread counts");
            EXPECT(sparsify_binned(g, st, plan) == b1,
                   "binned output differs across thread counts");
        }
        set_num_threads(1);
    }
    return "";
}

// ---- criterion 5: uncoarsening -------------------------------------------

std::string criterion_uncoarsen() {
    // two triangles + bridge: removing the single coarse edge removes the
    // bridge and nothing else
    Graph tt = testutil::two_triangles_bridge();
    Restriction agg;
    agg.fine_n = 6;
    agg.coarse_n = 2;
    agg.seeds = {0, 3};
    agg.assignment = {0, 0, 0, 1, 1, 1};
    auto mask = uncoarsen_decisions(tt, agg, Graph::from_edges(2, {}));
    Graph fine = subgraph_by_edges(tt, mask.values());
    EXPECT(fine.num_edges() == 6 && !fine.has_edge(2, 3),
           "bridge bundle not removed cleanly");

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const NodeId n = 20 + static_cast<NodeId>(hash_combine(seed, 3) % 41);  // <= 60
        Graph g = testutil::random_graph(n, 3 * n, seed);
        AlgDistParams params;
        params.seed = seed;
        EdgeScores s = compute_algdist(g, params);
        Restriction sel = select_seeds(g, s);
        if (sel.coarse_n == g.num_nodes()) continue;
        Restriction r = build_restriction(g, s, sel);
        Graph coarse = galerkin_coarsen(g, r);
        if (coarse.num_edges() == 0) continue;

        std::vector<std::uint8_t> ckeep(coarse.num_edges());
        for (EdgeId e = 0; e < coarse.num_edges(); ++e)
            ckeep[e] = static_cast<std::uint8_t>(hash_combine(seed, 0xDULL, e) & 1);
        Graph sparse_coarse = subgraph_by_edges(coarse, ckeep);
        auto got = uncoarsen_decisions(g, r, sparse_coarse);

        std::set<EdgeId> removed;
        for (EdgeId ce = 0; ce < coarse.num_edges(); ++ce) {
            if (ckeep[ce]) continue;
            const Edge& c = coarse.edge(ce);
            for (EdgeId fe = 0; fe < g.num_edges(); ++fe) {
                NodeId a = r.assignment[g.edge(fe).u], b = r.assignment[g.edge(fe).v];
                if (a > b) std::swap(a, b);
                if (a == c.u && b == c.v) removed.insert(fe);
            }
        }
        for (EdgeId fe = 0; fe < g.num_edges(); ++fe)
            EXPECT(got[fe] == (removed.count(fe) ? 0 : 1),
                   "mask disagrees with bundle enumeration");
    }
    return "";
}

// ---- criterion 6: metrics oracles ----------------------------------------

std::string criterion_metrics() {
    // betweenness vs per-pair path counting
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const NodeId n = 20 + static_cast<NodeId>(seed * 7);  // <= 48
        Graph g = testutil::random_graph(n, 3 * n, seed);
        auto got = betweenness_approx(g, n, seed);

        constexpr NodeId kInf = static_cast<NodeId>(-1);
        std::vector<std::vector<NodeId>> dist(n, std::vector<NodeId>(n, kInf));
        std::vector<std::vector<double>> paths(n, std::vector<double>(n, 0.0));
        for (NodeId s = 0; s < n; ++s) {
            dist[s][s] = 0;
            paths[s][s] = 1.0;
            std::queue<NodeId> q;
            q.push(s);
            while (!q.empty()) {
                NodeId u = q.front();
                q.pop();
                for (NodeId v : g.neighbors(u)) {
                    if (dist[s][v] == kInf) {
                        dist[s][v] = dist[s][u] + 1;
                        q.push(v);
                    }
                    if (dist[s][v] == dist[s][u] + 1) paths[s][v] += paths[s][u];
                }
            }
        }
        std::vector<double> want(n, 0.0);
        for (NodeId s = 0; s < n; ++s)
            for (NodeId t = s + 1; t < n; ++t) {
                if (dist[s][t] == kInf) continue;
                for (NodeId v = 0; v < n; ++v) {
                    if (v == s || v == t) continue;
                    if (dist[s][v] != kInf && dist[v][t] != kInf &&
                        dist[s][v] + dist[v][t] == dist[s][t])
                        want[v] += paths[s][v] * paths[v][t] / paths[s][t];
                }
            }
        for (NodeId i = 0; i < n; ++i)
            EXPECT(std::abs(got[i] - want[i]) <= 1e-9 * std::max(1.0, want[i]),
                   "betweenness mismatch vs exact oracle");
    }

    // pagerank: normalization and a dense power-iteration oracle
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const NodeId n = 8 + static_cast<NodeId>(seed * 3);  // <= 20
        Graph g = testutil::random_graph(n, 2 * n, seed);
        auto pr = pagerank(g);
        const double sum = std::accumulate(pr.begin(), pr.end(), 0.0);
        EXPECT(std::abs(sum - 1.0) <= 1e-9, "pagerank does not sum to 1");

        std::vector<double> v(n, 1.0 / n), nx(n);
        for (int it = 0; it < 100000; ++it) {
            double dangling = 0.0;
            for (NodeId i = 0; i < n; ++i)
                if (g.degree(i) == 0) dangling += v[i];
            double change = 0.0;
            for (NodeId i = 0; i < n; ++i) {
                double s = 0.0;
                for (NodeId j = 0; j < n; ++j)
                    if (g.has_edge(i, j)) s += v[j] / g.degree(j);
                nx[i] = (1.0 - 0.85) / n + 0.85 * (s + dangling / n);
                change += std::abs(nx[i] - v[i]);
            }
            v = nx;
            if (change < 1e-13) break;
        }
        for (NodeId i = 0; i < n; ++i)
            EXPECT(std::abs(pr[i] - v[i]) <= 1e-8, "pagerank disagrees with dense oracle");
    }

    Graph tt = testutil::two_triangles_bridge();
    EXPECT(std::abs(clustering_coefficients(tt).global - 7.0 / 9.0) <= 1e-12,
           "clustering of two-triangles-plus-bridge != 7/9");

    auto louv = modularity_louvain(tt, 1);
    EXPECT(louv.community == std::vector<NodeId>({0, 0, 0, 1, 1, 1}),
           "louvain did not find the triangle partition");
    EXPECT(std::abs(louv.modularity - 5.0 / 14.0) <= 1e-12, "louvain Q != 5/14");
    return "";
}

// ---- criterion 7: ratio fitting ------------------------------------------

std::string criterion_fit_ratio() {
    AlgDistParams params;
    SparsifyPlan plan;
    plan.mode = SparsifyMode::Mixture;

    std::vector<std::pair<std::string, Graph>> cases;
    cases.emplace_back("planted-partition", generate_planted_partition(3, 10, 3, 11));
    cases.emplace_back("random n=200 m=900", testutil::random_connected_graph(200, 900, 11));
    cases.emplace_back("random n=320 m=1400",
                       testutil::random_connected_graph(320, 1400, 29));
    cases.emplace_back("random n=500 m=2200",
                       testutil::random_connected_graph(500, 2200, 57));

    for (auto& [name, g] : cases) {
        params.seed = 11;
        plan.seed = 11;
        Hierarchy h = build_hierarchy(g, params);
        for (Preset preset : {Preset::Coarsest, Preset::Middle, Preset::Finest}) {
            LevelConfig mask = preset_config(h.depth(), preset, 3, 0.0);
            FitResult fr = fit_ratio(h, mask, 0.2, 0.4, params, plan);
            EXPECT(fr.hit && fr.realized >= 0.2 && fr.realized <= 0.4,
                   name + ": preset " + std::to_string(int(preset)) +
                       " realized ratio " + std::to_string(fr.realized) +
                       " outside [0.2,0.4]");
        }
    }
    return "";
}

// ---- criterion 8: runtime linearity via cmd_bench -------------------------

std::string criterion_bench_linearity() {
    const double t0 = now_seconds();
    const std::string csv_path = "acceptance_bench.csv";
    const std::string cmd = "\"" + g_cli_path +
                            "\" bench --sizes 10000,32000,100000,320000,1000000 "
                            "--algo both --out " +
                            csv_path + " 2> acceptance_bench.log";
    const int rc = std::system(cmd.c_str());
    EXPECT(rc == 0, "bench command failed with status " + std::to_string(rc));
    const double elapsed = now_seconds() - t0;

    std::ifstream in(csv_path);
    EXPECT(in.good(), "bench CSV missing");
    std::string line;
    double r2_single = -1.0, r2_ml = -1.0;
    while (std::getline(in, line)) {
        const auto pos = line.find("R2 = ");
        if (pos == std::string::npos) continue;
        const double v = std::atof(line.c_str() + pos + 5);
        if (line.find("fit single") != std::string::npos) r2_single = v;
        if (line.find("fit ml") != std::string::npos) r2_ml = v;
    }
    EXPECT(r2_single >= 0.9, "single-level fit R2 = " + std::to_string(r2_single));
    EXPECT(r2_ml >= 0.9, "multilevel fit R2 = " + std::to_string(r2_ml));
    EXPECT(elapsed < 300.0, "bench took " + std::to_string(elapsed) + "s (budget 300s)");
    return "";
}

// ---- criterion 9: parallel speedup (informative) ---------------------------

std::string criterion_parallel() {
    Graph g = generate_planted_partition(5236, 20, 5236, 1);  // ~1.0e6 edges
    AlgDistParams params;
    params.seed = 1;

    set_num_threads(1);
    double t0 = now_seconds();
    EdgeScores s1 = compute_algdist(g, params);
    const double t_serial = now_seconds() - t0;

    set_num_threads(8);
    t0 = now_seconds();
    EdgeScores s8 = compute_algdist(g, params);
    const double t_parallel = now_seconds() - t0;
    set_num_threads(1);

    EXPECT(s1.delta == s8.delta, "delta differs between 1 and 8 threads");
    const double speedup = t_serial / t_parallel;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "m=%u serial=%.2fs 8-thread=%.2fs speedup=%.2fx (>=1.5x expected on "
                  ">=8 cores; informative)",
                  g.num_edges(), t_serial, t_parallel, speedup);
    std::cout << "       " << buf << "\n";
    return "";
}

// ---- criterion 10: normalization contract ---------------------------------

std::string criterion_normalization() {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const NodeId n = 20 + static_cast<NodeId>(seed * 2);
        Graph g = testutil::random_graph(n, 3 * n, seed);
        AlgDistParams params;
        params.seed = seed;
        EdgeScores plain = compute_algdist(g, params);
        params.normalized = true;
        EdgeScores norm = compute_algdist(g, params);
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
            const Edge& ed = g.edge(e);
            const double want = plain.delta[e] / std::sqrt(double(g.degree(ed.u)) *
                                                           double(g.degree(ed.v)));
            EXPECT(norm.delta[e] == want, "normalized delta is not exactly delta/sqrt(didj)");
        }
    }
    return "";
}

struct Criterion {
    int id;
    std::string name;
    std::function<std::string()> run;
    bool informative = false;
};

}  // namespace

int main(int argc, char** argv) {
    g_cli_path = argc > 1 ? argv[1] : "./netsparse";

    const std::vector<Criterion> criteria = {
        {1, "planted-partition structure separation (strong cuts, weak connects)", criterion_separation},
        {2, "spearman closed-form oracle and identity comparison", criterion_spearman},
        {3, "galerkin coarsening vs dense P^T L P oracle", criterion_galerkin},
        {4, "single-level laws (identity, monotone, coverage, threads)",
         criterion_single_level},
        {5, "uncoarsening vs brute-force bundle enumeration", criterion_uncoarsen},
        {6, "metrics oracles (betweenness, pagerank, clustering, louvain)",
         criterion_metrics},
        {7, "ratio fitting into [0.2, 0.4] for all presets", criterion_fit_ratio},
        {8, "runtime linearity of cmd_bench (R^2 >= 0.9)", criterion_bench_linearity},
        {9, "parallel speedup of algdist (informative) + bitwise identity",
         criterion_parallel},
        {10, "normalization contract delta/sqrt(d_i d_j)", criterion_normalization},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const double t0 = now_seconds();
        std::string err;
        try {
            err = c.run();
        } catch (const std::exception& e) {
            err = std::string("exception: ") + e.what();
        }
        const double dt = now_seconds() - t0;
        if (err.empty()) {
            std::printf("[PASS] %2d. %s (%.2fs)\n", c.id, c.name.c_str(), dt);
        } else if (c.informative) {
            std::printf("[INFO] %2d. %s: %s (%.2fs)\n", c.id, c.name.c_str(), err.c_str(),
                        dt);
        } else {
            std::printf("[FAIL] %2d. %s: %s (%.2fs)\n", c.id, c.name.c_str(), err.c_str(),
                        dt);
            ++failures;
        }
        std::fflush(stdout);
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
