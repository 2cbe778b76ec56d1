#include "netsparse/multilevel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "netsparse/rng.hpp"

namespace netsparse {

namespace {

constexpr std::uint64_t kTagDown = 0xd0e5;
constexpr std::uint64_t kTagUp = 0x0be5;
constexpr std::uint64_t kTagPlan = 0x91a9;

// Level 0 uses the caller's seed unchanged so that a hierarchy of depth one
// reproduces the single-level pipeline exactly.
std::uint64_t level_seed(std::uint64_t seed, std::uint64_t tag, std::size_t level) {
    return level == 0 && tag != kTagUp ? seed : hash_combine(seed, tag, level);
}

}  // namespace

double LevelConfig::at_level(std::size_t level, std::size_t depth) const {
    if (level >= depth) throw std::invalid_argument("level out of range");
    const std::size_t idx = depth - 1 - level;  // ratios are coarsest-first
    if (idx >= ratios.size()) return -1.0;
    return ratios[idx];
}

void LevelConfig::validate() const {
    for (double r : ratios)
        if (r != -1.0 && (r < 0.0 || r > 1.0))
            throw std::invalid_argument("level entries must be -1 or within [0,1]");
}

std::vector<std::size_t> preset_active_indices(std::size_t depth, Preset preset,
                                               std::size_t span) {
    if (depth == 0) throw std::invalid_argument("empty hierarchy");
    if (span == 0) span = 1;
    const std::size_t s = static_cast<std::size_t>(preset);
    std::size_t begin = s * depth / 3;
    std::size_t end = (s + 1) * depth / 3;
    if (begin >= end) {
        // hierarchy too shallow for three segments: clamp to the nearest level
        std::size_t idx = preset == Preset::Coarsest ? 0
                          : preset == Preset::Middle ? depth / 2
                                                     : depth - 1;
        return {idx};
    }
    const std::size_t width = std::min(span, end - begin);
    std::size_t start;
    switch (preset) {
        case Preset::Coarsest: start = begin; break;                        // deep end
        case Preset::Finest: start = end - width; break;                    // fine end
        default: start = begin + (end - begin - width) / 2; break;          // centered
    }
    std::vector<std::size_t> idx(width);
    std::iota(idx.begin(), idx.end(), start);
    return idx;
}

LevelConfig preset_config(std::size_t depth, Preset preset, std::size_t span, double e) {
    LevelConfig cfg;
    cfg.ratios.assign(depth, -1.0);
    for (std::size_t i : preset_active_indices(depth, preset, span)) cfg.ratios[i] = e;
    return cfg;
}

Restriction select_seeds(const Graph& g, const EdgeScores& scores,
                         const MultilevelOptions& opts) {
    if (scores.size() != g.num_edges())
        throw std::invalid_argument("select_seeds: scores do not match graph");
    const NodeId n = g.num_nodes();

    std::vector<double> volume(n, 0.0);  // sum of incident deltas
    for (NodeId i = 0; i < n; ++i) {
        double s = 0.0;
        for (EdgeId e : g.incident_edges(i)) s += scores.delta[e];
        volume[i] = s;
    }
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (volume[a] != volume[b]) return volume[a] > volume[b];
        return a < b;
    });

    std::vector<std::uint8_t> in_c(n, 0);
    for (NodeId i : order) {
        if (volume[i] == 0.0) {  // isolated: always a seed
            in_c[i] = 1;
            continue;
        }
        double coupled = 0.0;
        auto nb = g.neighbors(i);
        auto eids = g.incident_edges(i);
        for (std::size_t k = 0; k < nb.size(); ++k)
            if (in_c[nb[k]]) coupled += scores.delta[eids[k]];
        if (coupled / volume[i] < opts.coupling_threshold) in_c[i] = 1;
    }

    Restriction r;
    r.fine_n = n;
    r.assignment.assign(n, kUnassigned);
    for (NodeId i = 0; i < n; ++i)
        if (in_c[i]) r.seeds.push_back(i);
    r.coarse_n = static_cast<NodeId>(r.seeds.size());
    for (NodeId c = 0; c < r.coarse_n; ++c) r.assignment[r.seeds[c]] = c;
    return r;
}

Restriction build_restriction(const Graph& g, const EdgeScores& scores, Restriction r) {
    if (r.fine_n != g.num_nodes())
        throw std::invalid_argument("restriction does not match graph");
    std::vector<std::uint8_t> is_seed(g.num_nodes(), 0);
    for (NodeId s : r.seeds) is_seed[s] = 1;

    for (NodeId i = 0; i < g.num_nodes(); ++i) {
        if (is_seed[i]) continue;
        auto nb = g.neighbors(i);
        auto eids = g.incident_edges(i);
        NodeId best = kUnassigned;
        double best_delta = 0.0;
        for (std::size_t k = 0; k < nb.size(); ++k) {
            if (!is_seed[nb[k]]) continue;
            const double d = scores.delta[eids[k]];
            // argmax delta; the per-node normalization over all seeds is a
            // constant factor and cannot change the winner. Ties go to the
            // smaller seed id, which the ascending neighbor order provides.
            if (best == kUnassigned || d > best_delta) {
                best = nb[k];
                best_delta = d;
            }
        }
        if (best == kUnassigned)
            throw std::logic_error("non-seed node has no seed neighbor");
        r.assignment[i] = r.assignment[best];
    }
    return r;
}

Graph galerkin_coarsen(const Graph& g_f, const Restriction& r) {
    if (r.fine_n != g_f.num_nodes())
        throw std::invalid_argument("restriction does not match graph");
    for (NodeId i = 0; i < g_f.num_nodes(); ++i)
        if (r.assignment[i] >= r.coarse_n)
            throw std::invalid_argument("restriction has unassigned nodes");

    // Off-diagonal of P^T L_f P: aggregate pair weights; self-loops dropped.
    std::map<std::pair<NodeId, NodeId>, double> acc;
    for (const Edge& e : g_f.edges()) {
        NodeId a = r.assignment[e.u], b = r.assignment[e.v];
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        acc[{a, b}] += e.w;
    }
    std::vector<Edge> coarse;
    coarse.reserve(acc.size());
    for (const auto& [key, w] : acc) coarse.push_back({key.first, key.second, w});
    return Graph::from_edges(r.coarse_n, std::move(coarse));
}

EdgeAttr<std::uint8_t> uncoarsen_decisions(const Graph& g_f, const Restriction& r,
                                           const Graph& sparse_coarse) {
    if (r.fine_n != g_f.num_nodes())
        throw std::invalid_argument("restriction does not match fine graph");
    if (sparse_coarse.num_nodes() != r.coarse_n)
        throw std::invalid_argument("sparse coarse graph has wrong node count");

    EdgeAttr<std::uint8_t> keep(g_f.num_edges(), 1);
    std::vector<std::uint8_t> used(sparse_coarse.num_edges(), 0);
    for (EdgeId e = 0; e < g_f.num_edges(); ++e) {
        const Edge& ed = g_f.edge(e);
        const NodeId a = r.assignment[ed.u], b = r.assignment[ed.v];
        if (a == b) continue;  // intra-aggregate edges always survive here
        auto ce = sparse_coarse.edge_id(a, b);
        if (ce) {
            used[*ce] = 1;
        } else {
            keep[e] = 0;
        }
    }
    for (EdgeId ce = 0; ce < sparse_coarse.num_edges(); ++ce)
        if (!used[ce])
            throw std::invalid_argument(
                "sparse coarse graph contains an edge absent from the coarse graph");
    return keep;
}

Hierarchy build_hierarchy(const Graph& g, const AlgDistParams& params,
                          const MultilevelOptions& opts) {
    Hierarchy h;
    h.opts = opts;
    Graph current = g;
    for (std::size_t level = 0;; ++level) {
        AlgDistParams p = params;
        p.seed = level_seed(params.seed, kTagDown, level);
        EdgeScores scores = compute_algdist(current, p);

        HierarchyLevel lvl;
        lvl.graph = current;
        lvl.scores = std::move(scores);
        if (current.num_nodes() <= opts.coarsest_size) {
            h.levels.push_back(std::move(lvl));
            break;
        }
        Restriction seeds = select_seeds(current, lvl.scores, opts);
        if (seeds.coarse_n == current.num_nodes()) {
            // nothing aggregates; stop here instead of looping forever
            h.levels.push_back(std::move(lvl));
            break;
        }
        lvl.restriction = build_restriction(current, lvl.scores, std::move(seeds));
        lvl.has_restriction = true;
        Graph coarse = galerkin_coarsen(current, lvl.restriction);
        h.levels.push_back(std::move(lvl));
        current = std::move(coarse);
    }
    return h;
}

Graph ml_solve(const Hierarchy& h, const LevelConfig& cfg, const AlgDistParams& params,
               const SparsifyPlan& plan) {
    if (h.levels.empty()) throw std::invalid_argument("empty hierarchy");
    cfg.validate();
    const std::size_t depth = h.depth();

    auto binned_at = [&](const Graph& g, const EdgeScores& scores, double e,
                         std::size_t level) {
        SparsifyPlan p = plan;
        p.mode = SparsifyMode::Mixture;
        p.e = e;
        p.seed = level_seed(plan.seed, kTagPlan, level);
        return sparsify_binned(g, scores, p);
    };

    // coarsest level: sparsify directly on the construction-time scores
    const std::size_t coarsest = depth - 1;
    const double e_c = cfg.at_level(coarsest, depth);
    Graph sparse = e_c < 0.0 ? h.levels[coarsest].graph
                             : binned_at(h.levels[coarsest].graph,
                                         h.levels[coarsest].scores, e_c, coarsest);

    for (std::size_t level = coarsest; level-- > 0;) {
        const HierarchyLevel& lvl = h.levels[level];
        auto mask = uncoarsen_decisions(lvl.graph, lvl.restriction, sparse);
        Graph partial = subgraph_by_edges(lvl.graph, mask.values());

        // distances are recomputed on the partially sparsified graph before
        // this level makes its own decisions
        AlgDistParams p = params;
        p.seed = level_seed(params.seed, kTagUp, level);
        EdgeScores rescored = compute_algdist(partial, p);

        const double e = cfg.at_level(level, depth);
        sparse = e < 0.0 ? std::move(partial) : binned_at(partial, rescored, e, level);
    }
    return sparse;
}

Graph ml_sparsify(const Graph& g, const LevelConfig& cfg, const AlgDistParams& params,
                  const SparsifyPlan& plan, const MultilevelOptions& opts) {
    Hierarchy h = build_hierarchy(g, params, opts);
    return ml_solve(h, cfg, params, plan);
}

FitResult fit_ratio(const Hierarchy& h, const LevelConfig& mask, double lo, double hi,
                    const AlgDistParams& params, const SparsifyPlan& plan) {
    if (!(lo > 0.0 && lo <= hi && hi <= 1.0))
        throw std::invalid_argument("target interval must lie within (0,1]");
    bool any_active = false;
    for (double r : mask.ratios) any_active |= r >= 0.0;
    if (!any_active) throw std::invalid_argument("no active levels in mask");
    const double m_orig = static_cast<double>(h.levels[0].graph.num_edges());
    if (m_orig == 0.0) throw std::invalid_argument("cannot fit an empty graph");

    FitResult result;
    auto probe = [&](double e) {
        LevelConfig cfg = mask;
        for (double& r : cfg.ratios)
            if (r >= 0.0) r = e;
        const Graph sparse = ml_solve(h, cfg, params, plan);
        ++result.probes;
        return static_cast<double>(sparse.num_edges()) / m_orig;
    };

    double best_e = 1.0, best_ratio = 1.0, best_dist = -1.0;
    auto consider = [&](double e, double ratio) {
        const double dist = ratio < lo ? lo - ratio : ratio > hi ? ratio - hi : 0.0;
        if (best_dist < 0.0 || dist < best_dist) {
            best_dist = dist;
            best_e = e;
            best_ratio = ratio;
        }
        return dist == 0.0;
    };

    double lo_e = 0.0, hi_e = 1.0;
    double r = probe(lo_e);
    bool done = consider(lo_e, r);
    if (!done && r > hi) {
        // even the most aggressive setting keeps too much; soft-fail
        done = true;
    }
    if (!done) {
        r = probe(hi_e);
        done = consider(hi_e, r);
        if (!done && r < lo) done = true;  // e = 1 still below target
    }
    for (int it = 0; !done && it < 30; ++it) {
        const double mid = 0.5 * (lo_e + hi_e);
        r = probe(mid);
        if (consider(mid, r)) break;
        (r < lo ? lo_e : hi_e) = mid;
    }

    result.e = best_e;
    result.realized = best_ratio;
    result.hit = best_dist == 0.0;
    result.config = mask;
    for (double& v : result.config.ratios)
        if (v >= 0.0) v = best_e;
    return result;
}

FitResult fit_ratio(const Graph& g, const LevelConfig& mask, double lo, double hi,
                    const AlgDistParams& params, const SparsifyPlan& plan,
                    const MultilevelOptions& opts) {
    Hierarchy h = build_hierarchy(g, params, opts);
    return fit_ratio(h, mask, lo, hi, params, plan);
}

void write_hierarchy_summary(const Hierarchy& h, std::ostream& out) {
    for (std::size_t level = 0; level < h.depth(); ++level) {
        const HierarchyLevel& lvl = h.levels[level];
        out << level << ' ' << lvl.graph.num_nodes() << ' ' << lvl.graph.num_edges() << ' ';
        if (lvl.has_restriction)
            out << lvl.restriction.seeds.size();
        else
            out << '-';
        out << '\n';
    }
}

}  // namespace netsparse
