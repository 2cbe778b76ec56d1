#include "netsparse/graph.hpp"

#include <algorithm>
#include <string>

#include "netsparse/rng.hpp"

namespace netsparse {

Graph Graph::from_edges(NodeId n, std::vector<Edge> edges) {
    for (auto& e : edges) {
        if (e.u >= n || e.v >= n)
            throw std::invalid_argument("edge endpoint " +
                                        std::to_string(std::max(e.u, e.v)) +
                                        " out of range for n=" + std::to_string(n));
        if (e.w < 0.0) throw std::invalid_argument("negative edge weight");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    // drop self-loops
    std::erase_if(edges, [](const Edge& e) { return e.u == e.v; });
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    // collapse duplicates keeping the max weight (order-independent)
    std::size_t out = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (out > 0 && edges[out - 1].u == edges[i].u && edges[out - 1].v == edges[i].v) {
            edges[out - 1].w = std::max(edges[out - 1].w, edges[i].w);
        } else {
            edges[out++] = edges[i];
        }
    }
    edges.resize(out);

    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& e : g.edges_) {
        ++g.offsets_[e.u + 1];
        ++g.offsets_[e.v + 1];
    }
    for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
    g.adj_.resize(g.offsets_.back());
    g.adj_w_.resize(g.offsets_.back());
    g.adj_eid_.resize(g.offsets_.back());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (EdgeId e = 0; e < g.edges_.size(); ++e) {
        const Edge& ed = g.edges_[e];
        std::size_t pu = cursor[ed.u]++, pv = cursor[ed.v]++;
        g.adj_[pu] = ed.v;
        g.adj_w_[pu] = ed.w;
        g.adj_eid_[pu] = e;
        g.adj_[pv] = ed.u;
        g.adj_w_[pv] = ed.w;
        g.adj_eid_[pv] = e;
    }
    // Filling in (u,v)-sorted edge order leaves each neighbor list sorted
    // already; no per-node sort needed.
    return g;
}

std::optional<EdgeId> Graph::edge_id(NodeId u, NodeId v) const {
    if (u >= n_ || v >= n_ || u == v) return std::nullopt;
    if (degree(v) < degree(u)) std::swap(u, v);
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return std::nullopt;
    return adj_eid_[offsets_[u] + static_cast<std::size_t>(it - nb.begin())];
}

double Graph::total_weight() const {
    double s = 0.0;
    for (const auto& e : edges_) s += e.w;
    return s;
}

Graph subgraph_by_edges(const Graph& g, std::span<const std::uint8_t> keep) {
    if (keep.size() != g.num_edges())
        throw std::invalid_argument("edge mask size does not match graph");
    std::vector<Edge> kept;
    for (EdgeId e = 0; e < g.num_edges(); ++e)
        if (keep[e]) kept.push_back(g.edge(e));
    return Graph::from_edges(g.num_nodes(), std::move(kept));
}

Graph generate_planted_partition(NodeId clusters, NodeId size, std::size_t inter_edges,
                                 std::uint64_t seed) {
    if (clusters < 2) throw std::invalid_argument("need at least 2 clusters");
    if (size < 3) throw std::invalid_argument("cluster size must be >= 3");
    const std::size_t cross_pairs = static_cast<std::size_t>(clusters) * (clusters - 1) / 2 *
                                    static_cast<std::size_t>(size) * size;
    if (inter_edges > cross_pairs)
        throw std::invalid_argument("more bridges requested than cross-cluster pairs");

    const NodeId n = clusters * size;
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(clusters) * size * (size - 1) / 2 + inter_edges);
    for (NodeId c = 0; c < clusters; ++c) {
        const NodeId base = c * size;
        for (NodeId i = 0; i < size; ++i)
            for (NodeId j = i + 1; j < size; ++j)
                edges.push_back({base + i, base + j, 1.0});
    }

    SplitMix64 rng(hash_combine(seed, 0x9fa1ca7ed0ULL));
    auto pick = [&](NodeId cluster) {
        return cluster * size + static_cast<NodeId>(rng.bounded(size));
    };
    std::vector<std::pair<NodeId, NodeId>> used;  // bridges, canonical order
    auto try_add = [&](NodeId ca, NodeId cb) {
        NodeId u = pick(ca), v = pick(cb);
        if (u > v) std::swap(u, v);
        if (std::find(used.begin(), used.end(), std::make_pair(u, v)) != used.end())
            return false;
        used.emplace_back(u, v);
        edges.push_back({u, v, 1.0});
        return true;
    };

    std::size_t added = 0;
    // backbone first: path over the cliques, then the cycle-closing edge
    for (NodeId t = 0; added < inter_edges && t < clusters; ++t) {
        NodeId ca = t < clusters - 1 ? t : clusters - 1;
        NodeId cb = t < clusters - 1 ? t + 1 : 0;
        while (!try_add(ca, cb)) {
        }
        ++added;
    }
    std::size_t attempts = 0;
    const std::size_t max_attempts = 100 * (inter_edges + 1) + 1000;
    while (added < inter_edges && attempts < max_attempts) {
        ++attempts;
        NodeId ca = static_cast<NodeId>(rng.bounded(clusters));
        NodeId cb = static_cast<NodeId>(rng.bounded(clusters));
        if (ca == cb) continue;
        if (try_add(ca, cb)) ++added;
    }
    if (added < inter_edges) {
        // dense fallback: sweep all unused cross pairs in order
        for (NodeId ca = 0; ca < clusters && added < inter_edges; ++ca)
            for (NodeId cb = ca + 1; cb < clusters && added < inter_edges; ++cb)
                for (NodeId i = 0; i < size && added < inter_edges; ++i)
                    for (NodeId j = 0; j < size && added < inter_edges; ++j) {
                        NodeId u = ca * size + i, v = cb * size + j;
                        if (std::find(used.begin(), used.end(), std::make_pair(u, v)) ==
                            used.end()) {
                            used.emplace_back(u, v);
                            edges.push_back({u, v, 1.0});
                            ++added;
                        }
                    }
    }
    return Graph::from_edges(n, std::move(edges));
}

}  // namespace netsparse
