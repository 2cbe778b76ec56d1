// Shared helpers for the test suites.
#pragma once

#include <set>
#include <utility>
#include <vector>

#include "netsparse/graph.hpp"
#include "netsparse/rng.hpp"

namespace testutil {

using namespace netsparse;

// Erdos-Renyi-ish random simple graph with exactly min(m, possible) edges.
inline Graph random_graph(NodeId n, std::size_t m, std::uint64_t seed) {
    SplitMix64 rng(hash_combine(seed, 0x7e57ULL));
    std::set<std::pair<NodeId, NodeId>> chosen;
    const std::size_t possible = static_cast<std::size_t>(n) * (n - 1) / 2;
    m = std::min(m, possible);
    while (chosen.size() < m) {
        NodeId u = static_cast<NodeId>(rng.bounded(n));
        NodeId v = static_cast<NodeId>(rng.bounded(n));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        chosen.insert({u, v});
    }
    std::vector<Edge> edges;
    edges.reserve(m);
    for (auto& [u, v] : chosen) edges.push_back({u, v, 1.0});
    return Graph::from_edges(n, std::move(edges));
}

// Connected variant: spanning path first, then random fill.
inline Graph random_connected_graph(NodeId n, std::size_t m, std::uint64_t seed) {
    SplitMix64 rng(hash_combine(seed, 0xc0ececULL));
    std::set<std::pair<NodeId, NodeId>> chosen;
    for (NodeId i = 0; i + 1 < n; ++i) chosen.insert({i, static_cast<NodeId>(i + 1)});
    const std::size_t possible = static_cast<std::size_t>(n) * (n - 1) / 2;
    m = std::min(std::max(m, chosen.size()), possible);
    while (chosen.size() < m) {
        NodeId u = static_cast<NodeId>(rng.bounded(n));
        NodeId v = static_cast<NodeId>(rng.bounded(n));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        chosen.insert({u, v});
    }
    std::vector<Edge> edges;
    for (auto& [u, v] : chosen) edges.push_back({u, v, 1.0});
    return Graph::from_edges(n, std::move(edges));
}

inline Graph path_graph(NodeId n) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i + 1 < n; ++i) edges.push_back({i, static_cast<NodeId>(i + 1), 1.0});
    return Graph::from_edges(n, std::move(edges));
}

inline Graph complete_graph(NodeId n) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
    return Graph::from_edges(n, std::move(edges));
}

inline Graph star_graph(NodeId leaves) {
    std::vector<Edge> edges;
    for (NodeId i = 1; i <= leaves; ++i) edges.push_back({0, i, 1.0});
    return Graph::from_edges(leaves + 1, std::move(edges));
}

// Two triangles {0,1,2} and {3,4,5} joined by the bridge 2-3.
inline Graph two_triangles_bridge() {
    return Graph::from_edges(
        6, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {3, 4, 1}, {3, 5, 1}, {4, 5, 1}, {2, 3, 1}});
}

}  // namespace testutil
