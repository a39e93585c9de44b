#ifndef CTXKIT_SCENARIO_HPP
#define CTXKIT_SCENARIO_HPP

#include <string>
#include <vector>

namespace ctx {

// A contextuality scenario: a hypergraph whose vertices are measurement
// outcomes and whose edges are complete measurements. Every vertex must be
// covered by at least one edge. Vertex and edge order are preserved from
// construction and fix the ordering of all downstream enumeration.
struct Scenario {
    std::vector<std::string> vertices;
    std::vector<std::vector<int>> edges; // vertex indices, order as given

    int index_of(const std::string& name) const; // -1 when absent
};

// Symmetric irreflexive adjacency over the vertices of a scenario.
struct OrthogonalityGraph {
    std::vector<std::string> vertices;
    std::vector<std::vector<bool>> adj;

    bool adjacent(int i, int j) const { return adj[i][j]; }
};

Scenario new_scenario(std::vector<std::string> vertices,
                      const std::vector<std::vector<std::string>>& edges);

// Adjacent iff the two vertices share no edge (never co-measured).
OrthogonalityGraph non_orthogonality_graph(const Scenario& s);

// Adjacent iff the two vertices co-occur in some edge; complement of the
// non-orthogonality graph.
OrthogonalityGraph exclusivity_graph(const Scenario& s);

// Foulis-Randall product: vertices are pairs "(a,b)"; edges are the union of
// the one-way measurement protocols in both directions, deduplicated and
// sorted lexicographically.
Scenario foulis_randall_product(const Scenario& a, const Scenario& b);

// Bell scenario B_{n,k,m}: n parties, k settings, m outcomes. n = 1 gives k
// disjoint edges of m vertices named "a|x"; n >= 2 folds the FR product
// left-associatively and renames vertices to "(a1..an|x1..xn)".
Scenario bell_scenario(int n, int k, int m);

// Canonical joint-outcome vertex name for a Bell scenario, e.g. "(01|10)".
std::string bell_vertex_name(const std::vector<int>& outcomes,
                             const std::vector<int>& settings);

} // namespace ctx

#endif
