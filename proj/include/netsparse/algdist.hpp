// Algebraic distance of edges: R randomized JOR relaxation sweeps accumulate
// squared endpoint differences; delta_ij = 1/sqrt(R_ij + eps) scores how
// strongly an edge is embedded in its local neighborhood.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "netsparse/graph.hpp"

namespace netsparse {

struct AlgDistParams {
    double alpha = 0.5;      // relaxation weight, in (0, 1)
    int sweeps = 10;         // number of test vectors R
    int iters = 40;          // JOR iterations per vector k
    double epsilon = 1e-12;  // stabilizer under the square root
    bool normalized = false; // divide by sqrt(d_i * d_j)
    std::uint64_t seed = 1;
};

struct EdgeScores {
    // Score of edge e as seen from its smaller endpoint. Symmetric scorers
    // leave rev empty; directional ones (local degree) fill both sides.
    std::vector<double> delta;
    std::vector<double> rev;
    bool normalized = false;

    bool symmetric() const { return rev.empty(); }
    std::size_t size() const { return delta.size(); }

    // View from node `from` along edge e of graph g.
    double from(const Graph& g, NodeId from, EdgeId e) const {
        if (rev.empty() || from == g.edge(e).u) return delta[e];
        return rev[e];
    }
};

EdgeScores compute_algdist(const Graph& g, const AlgDistParams& params);

// "u v delta" per edge, for debugging dumps.
void write_scores(const Graph& g, const EdgeScores& scores, std::ostream& out);

namespace detail {

// One synchronous JOR step x <- alpha*x + (1-alpha) * weighted neighbor mean.
// Nodes without (positively weighted) neighbors keep only the alpha*x term.
void jor_step(const Graph& g, double alpha, const std::vector<double>& x,
              std::vector<double>& out);

// Affine min-max rescale onto [-0.5, 0.5]; constant vectors are left alone.
void rescale_symmetric(std::vector<double>& x);

}  // namespace detail

}  // namespace netsparse
