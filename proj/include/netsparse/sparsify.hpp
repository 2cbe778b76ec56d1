// Single-level sparsification: every node nominates its top ceil(d_i^e)
// incident edges by score and the output is the union of nominations, so no
// non-isolated node is ever orphaned.
#pragma once

#include <cstdint>
#include <vector>

#include "netsparse/algdist.hpp"
#include "netsparse/graph.hpp"

namespace netsparse {

enum class SparsifyMode { KeepStrong, KeepWeak, Mixture };
enum class ScorerKind { AlgDist, LocalDegree, Jaccard, Random };

struct SparsifyPlan {
    double e = 0.5;  // retention exponent in [0, 1]
    SparsifyMode mode = SparsifyMode::KeepStrong;
    ScorerKind scorer = ScorerKind::AlgDist;
    AlgDistParams algdist;
    std::uint64_t seed = 1;
};

// Per-node retention budget t_i = ceil(d^e), clamped to [1, d].
NodeId retention_budget(NodeId degree, double e);

// Ranked selection (keep-strong / keep-weak), ties broken by smaller
// neighbor id. Output keeps all nodes and the original weights.
Graph sparsify_single(const Graph& g, const EdgeScores& scores, const SparsifyPlan& plan);

// Histogram-sampled selection (mixture): incident scores are binned with
// width 3.5*sigma/cbrt(d_i) and bins are drained round-robin in seeded
// random order, one uniform pick per non-empty bin per pass.
Graph sparsify_binned(const Graph& g, const EdgeScores& scores, const SparsifyPlan& plan);

// Baseline scorers.
EdgeScores score_local_degree(const Graph& g);          // edge (i,j) from i scores d_j
EdgeScores score_jaccard(const Graph& g);               // |N_i cap N_j| / |N_i cup N_j|
EdgeScores score_random(const Graph& g, std::uint64_t seed);

// Scores for plan.scorer, computing algebraic distances when asked.
EdgeScores compute_scores(const Graph& g, const SparsifyPlan& plan);

namespace detail {

// Edge ids node i would nominate under the plan; exposed for tests.
std::vector<EdgeId> nominate_ranked(const Graph& g, const EdgeScores& scores,
                                    const SparsifyPlan& plan, NodeId i);
std::vector<EdgeId> nominate_binned(const Graph& g, const EdgeScores& scores,
                                    const SparsifyPlan& plan, NodeId i);

}  // namespace detail

}  // namespace netsparse
