#include "netsparse/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "netsparse/rng.hpp"

namespace netsparse {

NodeId retention_budget(NodeId degree, double e) {
    if (degree == 0) return 0;
    if (e <= 0.0) return 1;
    if (e >= 1.0) return degree;
    // relative guard against pow() landing an ulp above an exact integer
    const double p = std::pow(static_cast<double>(degree), e);
    double t = std::ceil(p - p * 1e-9);
    t = std::max(1.0, std::min(t, static_cast<double>(degree)));
    return static_cast<NodeId>(t);
}

namespace {

void validate(const Graph& g, const EdgeScores& scores, const SparsifyPlan& plan) {
    if (scores.size() != g.num_edges())
        throw std::invalid_argument("sparsify: scores do not match graph edge count");
    if (plan.e < 0.0 || plan.e > 1.0)
        throw std::invalid_argument("sparsify: exponent e must be in [0,1]");
}

// adjacency slots of node i ordered by the plan's ranking
std::vector<std::size_t> ranked_slots(const Graph& g, const EdgeScores& scores,
                                      const SparsifyPlan& plan, NodeId i) {
    auto nb = g.neighbors(i);
    auto eids = g.incident_edges(i);
    std::vector<std::size_t> order(nb.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const bool descending = plan.mode == SparsifyMode::KeepStrong;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double sa = scores.from(g, i, eids[a]);
        const double sb = scores.from(g, i, eids[b]);
        if (sa != sb) return descending ? sa > sb : sa < sb;
        return nb[a] < nb[b];
    });
    return order;
}

}  // namespace

namespace detail {

std::vector<EdgeId> nominate_ranked(const Graph& g, const EdgeScores& scores,
                                    const SparsifyPlan& plan, NodeId i) {
    const NodeId d = g.degree(i);
    std::vector<EdgeId> picked;
    if (d == 0) return picked;
    const NodeId t = retention_budget(d, plan.e);
    auto eids = g.incident_edges(i);
    auto order = ranked_slots(g, scores, plan, i);
    picked.reserve(t);
    for (NodeId k = 0; k < t; ++k) picked.push_back(eids[order[k]]);
    return picked;
}

std::vector<EdgeId> nominate_binned(const Graph& g, const EdgeScores& scores,
                                    const SparsifyPlan& plan, NodeId i) {
    const NodeId d = g.degree(i);
    std::vector<EdgeId> picked;
    if (d == 0) return picked;
    const NodeId t = retention_budget(d, plan.e);
    auto eids = g.incident_edges(i);

    std::vector<double> vals(d);
    for (NodeId k = 0; k < d; ++k) vals[k] = scores.from(g, i, eids[k]);
    const auto [mn_it, mx_it] = std::minmax_element(vals.begin(), vals.end());
    const double mn = *mn_it, mx = *mx_it;

    if (d <= 1 || !(mx > mn) || t >= d) {
        // zero spread (sigma = 0) or keep-all: take the first t by neighbor id
        picked.reserve(std::min(t, d));
        for (NodeId k = 0; k < std::min(t, d); ++k) picked.push_back(eids[k]);
        return picked;
    }

    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= d;
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    const double sigma = std::sqrt(var / d);  // population std dev over N_i
    const double h = 3.5 * sigma / std::cbrt(static_cast<double>(d));
    const std::size_t k_bins =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((mx - mn) / h)));

    // equal-width histogram over [mn, mx]
    std::vector<std::vector<NodeId>> bins(k_bins);
    for (NodeId k = 0; k < d; ++k) {
        auto b = static_cast<std::size_t>((vals[k] - mn) / h);
        if (b >= k_bins) b = k_bins - 1;
        bins[b].push_back(k);
    }

    SplitMix64 rng(hash_combine(plan.seed, 0xb1c5ULL, i));
    std::vector<std::size_t> bin_order(k_bins);
    std::iota(bin_order.begin(), bin_order.end(), std::size_t{0});
    shuffle(bin_order, rng);

    // round-robin over the shuffled bins, one uniform pick per pass
    picked.reserve(t);
    NodeId selected = 0;
    while (selected < t) {
        bool progressed = false;
        for (std::size_t b : bin_order) {
            auto& bin = bins[b];
            if (bin.empty()) continue;
            const std::size_t r = static_cast<std::size_t>(rng.bounded(bin.size()));
            picked.push_back(eids[bin[r]]);
            bin[r] = bin.back();
            bin.pop_back();
            progressed = true;
            if (++selected == t) break;
        }
        if (!progressed) break;
    }
    return picked;
}

}  // namespace detail

namespace {

using Nominator = std::vector<EdgeId> (*)(const Graph&, const EdgeScores&,
                                          const SparsifyPlan&, NodeId);

Graph sparsify_union(const Graph& g, const EdgeScores& scores, const SparsifyPlan& plan,
                     Nominator nominate) {
    std::vector<std::uint8_t> keep(g.num_edges(), 0);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(g.num_nodes()); ++i) {
        for (EdgeId e : nominate(g, scores, plan, static_cast<NodeId>(i))) {
#pragma omp atomic write
            keep[e] = 1;
        }
    }
    return subgraph_by_edges(g, keep);
}

}  // namespace

Graph sparsify_single(const Graph& g, const EdgeScores& scores, const SparsifyPlan& plan) {
    validate(g, scores, plan);
    if (plan.mode == SparsifyMode::Mixture)
        throw std::invalid_argument("sparsify_single handles keep-strong/keep-weak only");
    return sparsify_union(g, scores, plan, detail::nominate_ranked);
}

Graph sparsify_binned(const Graph& g, const EdgeScores& scores, const SparsifyPlan& plan) {
    validate(g, scores, plan);
    return sparsify_union(g, scores, plan, detail::nominate_binned);
}

EdgeScores score_local_degree(const Graph& g) {
    EdgeScores s;
    s.delta.resize(g.num_edges());
    s.rev.resize(g.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        s.delta[e] = static_cast<double>(g.degree(ed.v));  // view from u
        s.rev[e] = static_cast<double>(g.degree(ed.u));    // view from v
    }
    return s;
}

EdgeScores score_jaccard(const Graph& g) {
    EdgeScores s;
    s.delta.resize(g.num_edges());
#pragma omp parallel for schedule(static)
    for (std::int64_t e = 0; e < static_cast<std::int64_t>(g.num_edges()); ++e) {
        const Edge& ed = g.edge(static_cast<EdgeId>(e));
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
        const std::size_t uni = a.size() + b.size() - common;
        s.delta[e] = uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
    }
    return s;
}

EdgeScores score_random(const Graph& g, std::uint64_t seed) {
    EdgeScores s;
    s.delta.resize(g.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        // strictly positive, independent of the edge numbering
        s.delta[e] = to_unit(hash_combine(seed, ed.u, ed.v)) + 0x1.0p-54;
    }
    return s;
}

EdgeScores compute_scores(const Graph& g, const SparsifyPlan& plan) {
    switch (plan.scorer) {
        case ScorerKind::AlgDist:
            return compute_algdist(g, plan.algdist);
        case ScorerKind::LocalDegree:
            return score_local_degree(g);
        case ScorerKind::Jaccard:
            return score_jaccard(g);
        case ScorerKind::Random:
            return score_random(g, plan.seed);
    }
    throw std::logic_error("unknown scorer");
}

}  // namespace netsparse
