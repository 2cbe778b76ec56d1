// Core graph type: undirected, weighted, simple, stored in compressed
// adjacency form with a stable undirected edge index.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace netsparse {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
    NodeId u = 0;  // u < v
    NodeId v = 0;
    double w = 1.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

class Graph {
public:
    Graph() = default;

    // Canonicalizes: self-loops dropped, duplicates collapsed keeping the
    // maximum weight, neighbor lists sorted by node id.
    // Throws std::invalid_argument on negative weights or out-of-range ids.
    static Graph from_edges(NodeId n, std::vector<Edge> edges);

    NodeId num_nodes() const { return n_; }
    EdgeId num_edges() const { return static_cast<EdgeId>(edges_.size()); }

    NodeId degree(NodeId i) const {
        return static_cast<NodeId>(offsets_[i + 1] - offsets_[i]);
    }
    std::span<const NodeId> neighbors(NodeId i) const {
        return {adj_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    std::span<const double> neighbor_weights(NodeId i) const {
        return {adj_w_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    std::span<const EdgeId> incident_edges(NodeId i) const {
        return {adj_eid_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }

    std::span<const Edge> edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }

    // Undirected lookup: edge_id(u, v) == edge_id(v, u).
    std::optional<EdgeId> edge_id(NodeId u, NodeId v) const;
    bool has_edge(NodeId u, NodeId v) const { return edge_id(u, v).has_value(); }

    double total_weight() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    NodeId n_ = 0;
    std::vector<std::size_t> offsets_;  // n + 1
    std::vector<NodeId> adj_;           // 2m, sorted within each node
    std::vector<double> adj_w_;         // parallel to adj_
    std::vector<EdgeId> adj_eid_;       // parallel to adj_
    std::vector<Edge> edges_;           // m, sorted by (u, v)
};

// Dense per-edge attribute; the (i,j) and (j,i) views address the same slot.
template <typename T>
class EdgeAttr {
public:
    EdgeAttr() = default;
    explicit EdgeAttr(EdgeId m, T init = T{}) : values_(m, init) {}

    EdgeId size() const { return static_cast<EdgeId>(values_.size()); }
    T& operator[](EdgeId e) { return values_[e]; }
    const T& operator[](EdgeId e) const { return values_[e]; }

    T& at(const Graph& g, NodeId u, NodeId v) {
        auto e = g.edge_id(u, v);
        if (!e) throw std::invalid_argument("EdgeAttr::at: no such edge");
        return values_[*e];
    }
    const T& at(const Graph& g, NodeId u, NodeId v) const {
        return const_cast<EdgeAttr*>(this)->at(g, u, v);
    }

    std::span<const T> values() const { return values_; }
    std::span<T> values() { return values_; }

private:
    std::vector<T> values_;
};

// Edge-induced subgraph on the full node set: keep[e] != 0 retains edge e.
Graph subgraph_by_edges(const Graph& g, std::span<const std::uint8_t> keep);

// Disjoint cliques K_size joined by `inter_edges` bridges. The first
// `clusters` bridges close a path and then a cycle over the cliques, so the
// result is connected whenever inter_edges >= clusters - 1; the remaining
// bridges are sampled uniformly among unused cross-clique pairs.
Graph generate_planted_partition(NodeId clusters, NodeId size, std::size_t inter_edges,
                                 std::uint64_t seed);

}  // namespace netsparse
