#ifndef CTXKIT_GRAPH_INVARIANTS_HPP
#define CTXKIT_GRAPH_INVARIANTS_HPP

#include <utility>
#include <vector>

namespace ctx {

struct WeightedGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges; // unordered pairs, no self-loops
    std::vector<double> weights;            // per-vertex, >= 0
};

WeightedGraph make_graph(int n, std::vector<std::pair<int, int>> edges,
                         std::vector<double> weights);

struct IndependenceResult {
    double value = 0.0;
    std::vector<int> witness; // independent set attaining the maximum
};

// Maximum-weight independent set, exact branch and bound.
IndependenceResult independence_number(const WeightedGraph& g);

// Lovasz theta of (G, w): max sum_ij sqrt(w_i w_j) X_ij over X psd, tr X = 1,
// X_ij = 0 on edges, solved on the induced subgraph of positive weights by a
// dense primal-dual interior-point method. Absolute accuracy ~1e-7.
double lovasz_theta(const WeightedGraph& g);

struct CswReport {
    double alpha;
    std::vector<int> alpha_witness;
    double theta;
};

CswReport csw_report(const WeightedGraph& g);

} // namespace ctx

#endif
