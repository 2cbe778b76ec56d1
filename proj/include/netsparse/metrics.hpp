// Structural property computation and original-vs-sparse comparison. All
// metrics treat the graph as unweighted, matching how sparsified benchmark
// networks are evaluated.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "netsparse/graph.hpp"

namespace netsparse {

// Spearman rank correlation with average ranks for ties; NaN when n < 2 or
// either rank vector has zero variance.
double spearman(std::span<const double> x, std::span<const double> y);

struct ClusteringResult {
    std::vector<double> per_node;  // c_i, 0 for d <= 1
    double global = 0.0;           // mean over nodes with d > 1
};
ClusteringResult clustering_coefficients(const Graph& g);

struct DiameterResult {
    unsigned value = 0;
    bool estimate = false;  // true when the bounded search hit its budget
};
// Exact all-source BFS up to 10^4 nodes, double-sweep + high-eccentricity
// refinement above. Max over connected components.
DiameterResult diameter(const Graph& g);

namespace detail {
unsigned diameter_all_pairs(const Graph& g);
DiameterResult diameter_bounded(const Graph& g, std::size_t bfs_budget = 0);  // 0 = unlimited
}  // namespace detail

struct ComponentsResult {
    std::size_t count = 0;
    std::vector<NodeId> label;  // component id, ordered by smallest member
};
ComponentsResult connected_components(const Graph& g);

// Power iteration on the lazy undirected walk; isolated nodes spread their
// mass uniformly. Scores sum to 1.
std::vector<double> pagerank(const Graph& g, double damping = 0.85, double tol = 1e-10);

// Brandes dependency accumulation from `pivots` uniformly sampled sources,
// scaled by n/pivots, pair counts halved (undirected convention). Exact when
// pivots == n.
std::vector<double> betweenness_approx(const Graph& g, NodeId pivots, std::uint64_t seed);

struct LouvainResult {
    std::vector<NodeId> community;  // ids compacted by smallest member
    double modularity = 0.0;
};
// Two-phase Louvain with a seed-derived deterministic sweep order.
LouvainResult modularity_louvain(const Graph& g, std::uint64_t seed);

// Modularity of a given partition: Q = sum_c [ in_c/2m - (tot_c/2m)^2 ].
double modularity(const Graph& g, std::span<const NodeId> community);

struct GraphSummary {
    NodeId n = 0;
    EdgeId m = 0;
    double clustering = 0.0;
    unsigned diameter = 0;
    bool diameter_estimate = false;
    double modularity = 0.0;
    std::size_t components = 0;
};

struct ComparisonReport {
    GraphSummary original;
    GraphSummary sparse;
    double edge_ratio = 0.0;        // |E_s| / |E_o|
    double diameter_ratio = 0.0;    // D_o / D_s
    double components_ratio = 0.0;  // comp_s / comp_o
    double modularity_ratio = 0.0;  // Q_s / Q_o
    double rho_betweenness = 0.0;
    double rho_pagerank = 0.0;
    double rho_degree = 0.0;
    double rho_clustering = 0.0;
};

struct CompareOptions {
    std::uint64_t seed = 1;
    NodeId pivots = 0;          // 0: max(100, ceil(sqrt(n))), clamped to n
    int betweenness_reps = 10;  // rank positions averaged before Spearman
};

// Both graphs must share the node set (same n). Undefined correlations come
// back as NaN.
ComparisonReport compare(const Graph& original, const Graph& sparse,
                         const CompareOptions& opts = {});

std::string report_to_json(const ComparisonReport& r);
// Header: graph,level_tag,|E|,CC,D,Q,Γ,BC_ρ,PR_ρ,DC_ρ,CC_ρ,edge_ratio
std::string report_csv_header();
std::string report_csv_row(const ComparisonReport& r, const std::string& graph_name,
                           const std::string& level_tag);

}  // namespace netsparse
