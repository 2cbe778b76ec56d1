// Multilevel sparsification: AMG-style aggregation builds a hierarchy of
// coarse graphs; sparsification decisions made on coarse edges are inherited
// by the whole bundle of fine edges they represent.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "netsparse/algdist.hpp"
#include "netsparse/graph.hpp"
#include "netsparse/sparsify.hpp"

namespace netsparse {

constexpr NodeId kUnassigned = static_cast<NodeId>(-1);

// 0/1 restriction operator with one nonzero per row: every fine node belongs
// to exactly one aggregate, seeds map to themselves.
struct Restriction {
    NodeId fine_n = 0;
    NodeId coarse_n = 0;
    std::vector<NodeId> seeds;       // fine ids, ascending; coarse id = rank
    std::vector<NodeId> assignment;  // fine node -> coarse id (kUnassigned until built)

    bool is_seed(NodeId i) const { return assignment[i] < coarse_n && seeds[assignment[i]] == i; }
};

struct MultilevelOptions {
    NodeId coarsest_size = 100;      // stop coarsening at or below this
    double coupling_threshold = 0.5; // Q: join C while coupled fraction < Q
};

struct HierarchyLevel {
    Graph graph;
    EdgeScores scores;        // algebraic distances computed on the way down
    Restriction restriction;  // towards the next coarser level
    bool has_restriction = false;
};

struct Hierarchy {
    std::vector<HierarchyLevel> levels;  // [0] = finest
    MultilevelOptions opts;

    std::size_t depth() const { return levels.size(); }
};

// Per-level sparsification exponents ordered coarsest-first; -1 skips the
// level. Shorter vectors than the hierarchy depth pad the fine side with -1,
// longer ones ignore the unused tail.
struct LevelConfig {
    std::vector<double> ratios;

    // Exponent for `level` (0 = finest) in a depth-`depth` hierarchy.
    double at_level(std::size_t level, std::size_t depth) const;
    void validate() const;
};

enum class Preset { Coarsest, Middle, Finest };

// Split levels into three equal segments and activate `span` of them in the
// chosen segment; degenerate shallow hierarchies clamp to the nearest level.
LevelConfig preset_config(std::size_t depth, Preset preset, std::size_t span, double e);
std::vector<std::size_t> preset_active_indices(std::size_t depth, Preset preset,
                                               std::size_t span);

// Greedy dominating-set selection in descending sum-of-incident-delta order:
// a node becomes a seed unless it is already coupled to C by at least the
// coupling threshold. Isolated nodes become seeds.
Restriction select_seeds(const Graph& g, const EdgeScores& scores,
                         const MultilevelOptions& opts = {});

// Assign every non-seed to its strongest (argmax delta) seed neighbor, ties
// to the smaller seed id.
Restriction build_restriction(const Graph& g, const EdgeScores& scores, Restriction seeds);

// Coarse graph of P^T L_f P with diagonal entries discarded:
// w_IJ = sum of fine weights between aggregates I and J.
Graph galerkin_coarsen(const Graph& g_f, const Restriction& r);

// Retention mask on fine edges: a cross-aggregate edge survives iff its
// coarse edge survives in sparse_coarse; intra-aggregate edges always do.
EdgeAttr<std::uint8_t> uncoarsen_decisions(const Graph& g_f, const Restriction& r,
                                           const Graph& sparse_coarse);

Hierarchy build_hierarchy(const Graph& g, const AlgDistParams& params,
                          const MultilevelOptions& opts = {});

// Coarse-to-fine solve over a prebuilt hierarchy; algebraic distances are
// recomputed after every uncoarsening step.
Graph ml_solve(const Hierarchy& h, const LevelConfig& cfg, const AlgDistParams& params,
               const SparsifyPlan& plan);

Graph ml_sparsify(const Graph& g, const LevelConfig& cfg, const AlgDistParams& params,
                  const SparsifyPlan& plan, const MultilevelOptions& opts = {});

struct FitResult {
    LevelConfig config;     // mask with active entries set to the fitted e
    double e = 1.0;
    double realized = 1.0;  // |E_sparse| / |E|
    bool hit = false;       // realized ratio landed inside the target
    int probes = 0;
};

// Binary search for one shared exponent over the active (>= 0) mask entries
// so that the realized edge ratio lands in [lo, hi]. Soft-fails with the
// closest probe when the interval is unreachable.
FitResult fit_ratio(const Hierarchy& h, const LevelConfig& mask, double lo, double hi,
                    const AlgDistParams& params, const SparsifyPlan& plan);
FitResult fit_ratio(const Graph& g, const LevelConfig& mask, double lo, double hi,
                    const AlgDistParams& params, const SparsifyPlan& plan,
                    const MultilevelOptions& opts = {});

// "level n m |C|" per level.
void write_hierarchy_summary(const Hierarchy& h, std::ostream& out);

}  // namespace netsparse
