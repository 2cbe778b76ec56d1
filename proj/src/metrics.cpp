#include "netsparse/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "netsparse/rng.hpp"

namespace netsparse {

namespace {

constexpr NodeId kInf = std::numeric_limits<NodeId>::max();

// Fractional (average) ranks, 1-based; ties share the mean of their range.
std::vector<double> average_ranks(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (v[a] != v[b]) return v[a] < v[b];
        return a < b;
    });
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && v[idx[j]] == v[idx[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + 1 + j);  // mean of i+1 .. j
        for (std::size_t k = i; k < j; ++k) rank[idx[k]] = r;
        i = j;
    }
    return rank;
}

void bfs(const Graph& g, NodeId src, std::vector<NodeId>& dist) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::queue<NodeId> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop();
        for (NodeId v : g.neighbors(u)) {
            if (dist[v] == kInf) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
        }
    }
}

double safe_ratio(double num, double den) {
    if (num == den) return 1.0;
    if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return num / den;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) return nan;
    auto rx = average_ranks(x);
    auto ry = average_ranks(y);
    const double mean = 0.5 * static_cast<double>(n + 1);  // ranks always average to this
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = rx[i] - mean, b = ry[i] - mean;
        sxx += a * a;
        syy += b * b;
        sxy += a * b;
    }
    if (sxx == 0.0 || syy == 0.0) return nan;  // zero-variance rank vector
    return sxy / std::sqrt(sxx * syy);
}

ClusteringResult clustering_coefficients(const Graph& g) {
    const NodeId n = g.num_nodes();
    ClusteringResult res;
    res.per_node.assign(n, 0.0);

    // common neighbors per edge; lambda_i = half the sum over incident edges
    std::vector<double> lambda(n, 0.0);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        auto a = g.neighbors(ed.u);
        auto b = g.neighbors(ed.v);
        std::size_t common = 0, ia = 0, ib = 0;
        while (ia < a.size() && ib < b.size()) {
            if (a[ia] == b[ib]) {
                ++common;
                ++ia;
                ++ib;
            } else if (a[ia] < b[ib]) {
                ++ia;
            } else {
                ++ib;
            }
        }
        lambda[ed.u] += 0.5 * static_cast<double>(common);
        lambda[ed.v] += 0.5 * static_cast<double>(common);
    }

    double sum = 0.0;
    std::size_t eligible = 0;
    for (NodeId i = 0; i < n; ++i) {
        const double d = static_cast<double>(g.degree(i));
        if (d > 1.0) {
            res.per_node[i] = lambda[i] / (d * (d - 1.0) / 2.0);
            sum += res.per_node[i];
            ++eligible;
        }
    }
    res.global = eligible > 0 ? sum / static_cast<double>(eligible) : 0.0;
    return res;
}

ComponentsResult connected_components(const Graph& g) {
    const NodeId n = g.num_nodes();
    ComponentsResult res;
    res.label.assign(n, kInf);
    std::queue<NodeId> q;
    for (NodeId s = 0; s < n; ++s) {
        if (res.label[s] != kInf) continue;
        const NodeId c = static_cast<NodeId>(res.count++);
        res.label[s] = c;
        q.push(s);
        while (!q.empty()) {
            NodeId u = q.front();
            q.pop();
            for (NodeId v : g.neighbors(u))
                if (res.label[v] == kInf) {
                    res.label[v] = c;
                    q.push(v);
                }
        }
    }
    return res;
}

namespace detail {

unsigned diameter_all_pairs(const Graph& g) {
    const NodeId n = g.num_nodes();
    unsigned best = 0;
    std::vector<NodeId> dist(n);
    for (NodeId s = 0; s < n; ++s) {
        bfs(g, s, dist);
        for (NodeId v = 0; v < n; ++v)
            if (dist[v] != kInf && dist[v] > best) best = dist[v];
    }
    return best;
}

// Double sweep for a lower bound, then eccentricities of nodes ordered by
// decreasing depth from the sweep midpoint. Once the remaining depths i
// satisfy 2(i-1) <= best, nothing deeper-in can improve it and the bound is
// the exact diameter.
DiameterResult diameter_bounded(const Graph& g, std::size_t bfs_budget) {
    const NodeId n = g.num_nodes();
    DiameterResult res;
    if (n == 0) return res;
    auto comps = connected_components(g);
    std::vector<std::vector<NodeId>> members(comps.count);
    for (NodeId i = 0; i < n; ++i) members[comps.label[i]].push_back(i);

    std::vector<NodeId> dist(n), dist2(n);
    std::size_t used = 0;
    auto charge = [&]() {
        ++used;
        return bfs_budget != 0 && used > bfs_budget;
    };

    unsigned best = 0;
    for (const auto& comp : members) {
        if (comp.size() < 2) continue;
        NodeId start = comp[0];
        for (NodeId v : comp)
            if (g.degree(v) > g.degree(start)) start = v;

        if (charge()) { res.estimate = true; break; }
        bfs(g, start, dist);
        NodeId a = comp[0];
        for (NodeId v : comp)
            if (dist[v] != kInf && dist[v] > dist[a]) a = v;

        if (charge()) { res.estimate = true; break; }
        bfs(g, a, dist);
        NodeId b = comp[0];
        for (NodeId v : comp)
            if (dist[v] != kInf && dist[v] > dist[b]) b = v;
        best = std::max(best, static_cast<unsigned>(dist[b]));

        // midpoint of the a--b sweep: any node halfway along a shortest path
        const NodeId half = dist[b] / 2;
        NodeId mid = b;
        while (dist[mid] > half) {
            for (NodeId w : g.neighbors(mid))
                if (dist[w] + 1 == dist[mid]) {
                    mid = w;
                    break;
                }
        }

        if (charge()) { res.estimate = true; break; }
        bfs(g, mid, dist);
        unsigned ecc_mid = 0;
        for (NodeId v : comp)
            if (dist[v] != kInf && dist[v] > ecc_mid) ecc_mid = dist[v];
        std::vector<std::vector<NodeId>> fringe(ecc_mid + 1);
        for (NodeId v : comp)
            if (dist[v] != kInf) fringe[dist[v]].push_back(v);

        bool exhausted = false;
        for (unsigned i = ecc_mid; i >= 1 && !exhausted; --i) {
            for (NodeId v : fringe[i]) {
                if (charge()) {
                    res.estimate = true;
                    exhausted = true;
                    break;
                }
                bfs(g, v, dist2);
                for (NodeId w : comp)
                    if (dist2[w] != kInf && dist2[w] > best) best = dist2[w];
            }
            if (best >= 2 * (i - 1)) break;
        }
        if (res.estimate) break;
    }
    res.value = best;
    return res;
}

}  // namespace detail

DiameterResult diameter(const Graph& g) {
    if (g.num_nodes() <= 10000) return {detail::diameter_all_pairs(g), false};
    const auto n = static_cast<std::size_t>(g.num_nodes());
    const std::size_t budget = 200 + 2 * static_cast<std::size_t>(std::sqrt(double(n)));
    return detail::diameter_bounded(g, budget);
}

std::vector<double> pagerank(const Graph& g, double damping, double tol) {
    const NodeId n = g.num_nodes();
    if (n == 0) return {};
    std::vector<double> pr(n, 1.0 / n), next(n);
    for (int iter = 0; iter < 10000; ++iter) {
        double dangling = 0.0;
        for (NodeId i = 0; i < n; ++i)
            if (g.degree(i) == 0) dangling += pr[i];
        const double base = (1.0 - damping) / n + damping * dangling / n;
        for (NodeId i = 0; i < n; ++i) {
            double s = 0.0;
            for (NodeId j : g.neighbors(i)) s += pr[j] / g.degree(j);
            next[i] = base + damping * s;
        }
        double change = 0.0;
        for (NodeId i = 0; i < n; ++i) change += std::abs(next[i] - pr[i]);
        pr.swap(next);
        if (change < tol) break;
    }
    return pr;
}

std::vector<double> betweenness_approx(const Graph& g, NodeId pivots, std::uint64_t seed) {
    const NodeId n = g.num_nodes();
    if (pivots < 1) throw std::invalid_argument("betweenness: pivots must be >= 1");
    if (pivots > n) pivots = n;
    std::vector<double> bc(n, 0.0);
    if (n == 0) return bc;

    std::vector<NodeId> sources(n);
    std::iota(sources.begin(), sources.end(), NodeId{0});
    SplitMix64 rng(hash_combine(seed, 0xbcbcULL));
    shuffle(sources, rng);
    sources.resize(pivots);

    std::vector<NodeId> dist(n), order;
    std::vector<double> sigma(n), delta(n);
    order.reserve(n);
    std::queue<NodeId> q;
    for (NodeId s : sources) {
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        q.push(s);
        while (!q.empty()) {
            NodeId u = q.front();
            q.pop();
            order.push_back(u);
            for (NodeId v : g.neighbors(u)) {
                if (dist[v] == kInf) {
                    dist[v] = dist[u] + 1;
                    q.push(v);
                }
                if (dist[v] == dist[u] + 1) sigma[v] += sigma[u];
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const NodeId w = *it;
            for (NodeId v : g.neighbors(w))
                if (dist[v] + 1 == dist[w])
                    delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != s) bc[w] += delta[w];
        }
    }
    // extrapolate to all sources, then halve (each unordered pair twice)
    const double scale = static_cast<double>(n) / static_cast<double>(pivots) * 0.5;
    for (double& v : bc) v *= scale;
    return bc;
}

double modularity(const Graph& g, std::span<const NodeId> community) {
    if (community.size() != g.num_nodes())
        throw std::invalid_argument("modularity: label vector length mismatch");
    const double m = static_cast<double>(g.num_edges());
    if (m == 0.0) return 0.0;
    NodeId nc = 0;
    for (NodeId c : community) nc = std::max(nc, static_cast<NodeId>(c + 1));
    std::vector<double> internal(nc, 0.0), total(nc, 0.0);
    for (const Edge& e : g.edges()) {
        if (community[e.u] == community[e.v]) internal[community[e.u]] += 2.0;
        total[community[e.u]] += 1.0;
        total[community[e.v]] += 1.0;
    }
    const double m2 = 2.0 * m;
    double q = 0.0;
    for (NodeId c = 0; c < nc; ++c)
        q += internal[c] / m2 - (total[c] / m2) * (total[c] / m2);
    return q;
}

namespace {

// Working graph for Louvain aggregation: cross edges plus a self weight for
// collapsed internal edges.
struct LouvainGraph {
    std::vector<std::vector<std::pair<NodeId, double>>> adj;
    std::vector<double> self;

    NodeId size() const { return static_cast<NodeId>(adj.size()); }
};

// One local-moving phase; returns true if anything moved.
bool louvain_move_phase(const LouvainGraph& wg, std::vector<NodeId>& comm,
                        std::uint64_t seed) {
    const NodeId n = wg.size();
    std::vector<double> k(n, 0.0);  // weighted degree, self loops twice
    double m2 = 0.0;
    for (NodeId i = 0; i < n; ++i) {
        double s = 2.0 * wg.self[i];
        for (auto& [j, w] : wg.adj[i]) s += w;
        k[i] = s;
        m2 += s;
    }
    if (m2 == 0.0) return false;

    std::vector<double> sum_tot(n, 0.0);
    for (NodeId i = 0; i < n; ++i) sum_tot[comm[i]] += k[i];

    std::vector<NodeId> sweep(n);
    std::iota(sweep.begin(), sweep.end(), NodeId{0});
    SplitMix64 rng(hash_combine(seed, 0x10a1ULL));
    shuffle(sweep, rng);

    std::vector<double> to_comm(n, 0.0);
    bool any_moved = false;
    bool moved = true;
    for (int pass = 0; moved && pass < 256; ++pass) {
        moved = false;
        for (NodeId i : sweep) {
            const NodeId own = comm[i];
            std::vector<NodeId> touched;
            for (auto& [j, w] : wg.adj[i]) {
                const NodeId c = comm[j];
                if (to_comm[c] == 0.0) touched.push_back(c);
                to_comm[c] += w;
            }
            sum_tot[own] -= k[i];
            // move only on a strict gain over staying; equal-gain candidates
            // resolve to the smaller community id
            NodeId best = own;
            double best_gain = to_comm[own] - sum_tot[own] * k[i] / m2;
            for (NodeId c : touched) {
                if (c == own) continue;
                const double gain = to_comm[c] - sum_tot[c] * k[i] / m2;
                if (gain > best_gain || (gain == best_gain && best != own && c < best)) {
                    best_gain = gain;
                    best = c;
                }
            }
            sum_tot[best] += k[i];
            if (best != own) {
                comm[i] = best;
                moved = true;
                any_moved = true;
            }
            for (NodeId c : touched) to_comm[c] = 0.0;
            to_comm[own] = 0.0;
        }
    }
    return any_moved;
}

// Relabel communities 0..k-1 ordered by smallest contained node.
NodeId compact_labels(std::vector<NodeId>& comm) {
    std::vector<NodeId> remap(comm.size(), kInf);
    NodeId next = 0;
    for (NodeId& c : comm) {
        if (remap[c] == kInf) remap[c] = next++;
        c = remap[c];
    }
    return next;
}

LouvainGraph aggregate(const LouvainGraph& wg, const std::vector<NodeId>& comm, NodeId nc) {
    LouvainGraph out;
    out.adj.resize(nc);
    out.self.assign(nc, 0.0);
    std::map<std::pair<NodeId, NodeId>, double> cross;
    for (NodeId i = 0; i < wg.size(); ++i) {
        out.self[comm[i]] += wg.self[i];
        for (auto& [j, w] : wg.adj[i]) {
            if (j < i) continue;  // each undirected cross edge once
            const NodeId a = comm[i], b = comm[j];
            if (a == b)
                out.self[a] += w;
            else
                cross[{std::min(a, b), std::max(a, b)}] += w;
        }
    }
    for (const auto& [key, w] : cross) {
        out.adj[key.first].emplace_back(key.second, w);
        out.adj[key.second].emplace_back(key.first, w);
    }
    return out;
}

}  // namespace

LouvainResult modularity_louvain(const Graph& g, std::uint64_t seed) {
    const NodeId n = g.num_nodes();
    LouvainResult res;
    res.community.resize(n);
    std::iota(res.community.begin(), res.community.end(), NodeId{0});
    if (g.num_edges() == 0) {
        res.modularity = 0.0;
        return res;
    }

    LouvainGraph wg;
    wg.adj.resize(n);
    wg.self.assign(n, 0.0);
    for (const Edge& e : g.edges()) {
        wg.adj[e.u].emplace_back(e.v, 1.0);  // metrics are unweighted
        wg.adj[e.v].emplace_back(e.u, 1.0);
    }

    // node_of_super[c] = members' representative mapping to original labels
    std::vector<NodeId> label(n);
    std::iota(label.begin(), label.end(), NodeId{0});
    for (int level = 0;; ++level) {
        std::vector<NodeId> comm(wg.size());
        std::iota(comm.begin(), comm.end(), NodeId{0});
        if (!louvain_move_phase(wg, comm, hash_combine(seed, 0x70cULL, level))) break;
        const NodeId nc = compact_labels(comm);
        for (NodeId i = 0; i < n; ++i) label[i] = comm[label[i]];
        if (nc == wg.size()) break;
        wg = aggregate(wg, comm, nc);
    }

    res.community = std::move(label);
    compact_labels(res.community);
    res.modularity = modularity(g, res.community);
    return res;
}

ComparisonReport compare(const Graph& original, const Graph& sparse,
                         const CompareOptions& opts) {
    if (original.num_nodes() != sparse.num_nodes())
        throw std::invalid_argument("compare: graphs have different node sets");
    const NodeId n = original.num_nodes();

    auto summarize = [&](const Graph& g) {
        GraphSummary s;
        s.n = g.num_nodes();
        s.m = g.num_edges();
        s.clustering = clustering_coefficients(g).global;
        auto d = diameter(g);
        s.diameter = d.value;
        s.diameter_estimate = d.estimate;
        s.modularity = modularity_louvain(g, hash_combine(opts.seed, 0x9dULL)).modularity;
        s.components = connected_components(g).count;
        return s;
    };

    ComparisonReport r;
    r.original = summarize(original);
    r.sparse = summarize(sparse);
    r.edge_ratio = safe_ratio(static_cast<double>(r.sparse.m),
                              static_cast<double>(r.original.m));
    r.diameter_ratio = safe_ratio(r.original.diameter, r.sparse.diameter);
    r.components_ratio = safe_ratio(static_cast<double>(r.sparse.components),
                                    static_cast<double>(r.original.components));
    r.modularity_ratio = safe_ratio(r.sparse.modularity, r.original.modularity);

    std::vector<double> deg_o(n), deg_s(n);
    for (NodeId i = 0; i < n; ++i) {
        deg_o[i] = original.degree(i);
        deg_s[i] = sparse.degree(i);
    }
    r.rho_degree = spearman(deg_o, deg_s);
    r.rho_pagerank = spearman(pagerank(original), pagerank(sparse));
    r.rho_clustering = spearman(clustering_coefficients(original).per_node,
                                clustering_coefficients(sparse).per_node);

    // betweenness: average the rank positions over seeded repetitions, then
    // correlate the averaged ranks
    NodeId pivots = opts.pivots;
    if (pivots == 0)
        pivots = static_cast<NodeId>(
            std::max(100.0, std::ceil(std::sqrt(static_cast<double>(n)))));
    pivots = std::min(pivots, n);
    if (n >= 2 && pivots >= 1) {
        std::vector<double> acc_o(n, 0.0), acc_s(n, 0.0);
        for (int rep = 0; rep < opts.betweenness_reps; ++rep) {
            const std::uint64_t s = hash_combine(opts.seed, 0xbcULL, rep);
            auto bo = betweenness_approx(original, pivots, s);
            auto bs = betweenness_approx(sparse, pivots, s);
            auto ro = average_ranks(bo);
            auto rs = average_ranks(bs);
            for (NodeId i = 0; i < n; ++i) {
                acc_o[i] += ro[i];
                acc_s[i] += rs[i];
            }
        }
        r.rho_betweenness = spearman(acc_o, acc_s);
    } else {
        r.rho_betweenness = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

namespace {

nlohmann::json summary_json(const GraphSummary& s) {
    return {
        {"n", s.n},
        {"m", s.m},
        {"clustering", s.clustering},
        {"diameter", s.diameter},
        {"diameter_estimate", s.diameter_estimate},
        {"modularity", s.modularity},
        {"components", s.components},
    };
}

std::string fmt_num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string report_to_json(const ComparisonReport& r) {
    nlohmann::json j = {
        {"original", summary_json(r.original)},
        {"sparse", summary_json(r.sparse)},
        {"edge_ratio", r.edge_ratio},
        {"diameter_ratio", r.diameter_ratio},
        {"components_ratio", r.components_ratio},
        {"modularity_ratio", r.modularity_ratio},
        {"spearman",
         {{"betweenness", r.rho_betweenness},
          {"pagerank", r.rho_pagerank},
          {"degree", r.rho_degree},
          {"clustering", r.rho_clustering}}},
    };
    return j.dump(2);
}

std::string report_csv_header() {
    return "graph,level_tag,|E|,CC,D,Q,Γ,BC_ρ,PR_ρ,DC_ρ,CC_ρ,"
           "edge_ratio";
}

std::string report_csv_row(const ComparisonReport& r, const std::string& graph_name,
                           const std::string& level_tag) {
    std::ostringstream out;
    out << graph_name << ',' << level_tag << ',' << r.sparse.m << ','
        << fmt_num(r.sparse.clustering) << ',' << r.sparse.diameter << ','
        << fmt_num(r.sparse.modularity) << ',' << r.sparse.components << ','
        << fmt_num(r.rho_betweenness) << ',' << fmt_num(r.rho_pagerank) << ','
        << fmt_num(r.rho_degree) << ',' << fmt_num(r.rho_clustering) << ','
        << fmt_num(r.edge_ratio);
    return out.str();
}

}  // namespace netsparse
