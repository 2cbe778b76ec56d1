#include "netsparse/algdist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "netsparse/rng.hpp"

namespace netsparse {

namespace detail {

void jor_step(const Graph& g, double alpha, const std::vector<double>& x,
              std::vector<double>& out) {
    const NodeId n = g.num_nodes();
#pragma omp parallel for schedule(static)
    for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(n); ++ii) {
        const NodeId i = static_cast<NodeId>(ii);
        auto nb = g.neighbors(i);
        auto wts = g.neighbor_weights(i);
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < nb.size(); ++k) {
            num += wts[k] * x[nb[k]];
            den += wts[k];
        }
        const double avg = den > 0.0 ? num / den : 0.0;
        out[i] = alpha * x[i] + (1.0 - alpha) * avg;
    }
}

void rescale_symmetric(std::vector<double>& x) {
    if (x.empty()) return;
    double mn = x[0], mx = x[0];
    for (double v : x) {  // serial scan keeps the reduction exact
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    if (!(mx > mn)) return;  // constant vector stays put
    const double inv = 1.0 / (mx - mn);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(x.size()); ++i)
        x[i] = (x[i] - mn) * inv - 0.5;
}

}  // namespace detail

EdgeScores compute_algdist(const Graph& g, const AlgDistParams& p) {
    if (g.num_nodes() == 0) throw std::invalid_argument("algdist: empty graph");
    if (!(p.alpha > 0.0 && p.alpha < 1.0))
        throw std::invalid_argument("algdist: alpha must be in (0,1)");
    if (p.sweeps < 1) throw std::invalid_argument("algdist: sweeps must be >= 1");
    if (p.iters < 0) throw std::invalid_argument("algdist: iters must be >= 0");
    if (!(p.epsilon > 0.0)) throw std::invalid_argument("algdist: epsilon must be > 0");

    const NodeId n = g.num_nodes();
    const EdgeId m = g.num_edges();
    std::vector<double> acc(m, 0.0);
    std::vector<double> x(n), next(n);

    for (int r = 0; r < p.sweeps; ++r) {
        // counter-based init: node i's value never depends on the worker count
        const std::uint64_t round_seed = hash_combine(p.seed, 0xa19d151ULL, r);
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
            x[i] = to_symmetric_unit(hash_combine(round_seed, static_cast<std::uint64_t>(i)));

        for (int it = 0; it < p.iters; ++it) {
            detail::jor_step(g, p.alpha, x, next);
            std::swap(x, next);
        }
        detail::rescale_symmetric(x);

#pragma omp parallel for schedule(static)
        for (std::int64_t e = 0; e < static_cast<std::int64_t>(m); ++e) {
            const Edge& ed = g.edge(static_cast<EdgeId>(e));
            const double d = x[ed.u] - x[ed.v];
            acc[e] += d * d;
        }
    }

    EdgeScores scores;
    scores.delta.resize(m);
    scores.normalized = p.normalized;
#pragma omp parallel for schedule(static)
    for (std::int64_t e = 0; e < static_cast<std::int64_t>(m); ++e) {
        double d = 1.0 / std::sqrt(acc[e] + p.epsilon);
        if (p.normalized) {
            const Edge& ed = g.edge(static_cast<EdgeId>(e));
            d /= std::sqrt(static_cast<double>(g.degree(ed.u)) *
                           static_cast<double>(g.degree(ed.v)));
        }
        scores.delta[e] = d;
    }
    return scores;
}

void write_scores(const Graph& g, const EdgeScores& scores, std::ostream& out) {
    if (scores.size() != g.num_edges())
        throw std::invalid_argument("scores do not match graph");
    char buf[96];
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        int len = std::snprintf(buf, sizeof(buf), "%u %u %.17g\n", ed.u, ed.v,
                                scores.delta[e]);
        out.write(buf, len);
    }
}

}  // namespace netsparse
