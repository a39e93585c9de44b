#include "ctxkit/scenario.hpp"

#include "ctxkit/errors.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace ctx {

int Scenario::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return static_cast<int>(i);
    return -1;
}

Scenario new_scenario(std::vector<std::string> vertices,
                      const std::vector<std::vector<std::string>>& edges) {
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (!index.emplace(vertices[i], static_cast<int>(i)).second)
            throw DuplicateVertexInEdge("duplicate vertex identifier: " + vertices[i]);
    }

    Scenario s;
    s.vertices = std::move(vertices);
    std::set<std::vector<int>> seen;
    std::vector<bool> covered(s.vertices.size(), false);
    for (const auto& edge : edges) {
        if (edge.empty()) throw EmptyEdge("edge with no outcomes");
        std::vector<int> ids;
        std::unordered_set<int> inEdge;
        for (const auto& name : edge) {
            auto it = index.find(name);
            if (it == index.end())
                throw UncoveredVertex("edge references unknown vertex: " + name);
            if (!inEdge.insert(it->second).second)
                throw DuplicateVertexInEdge("vertex repeated within an edge: " + name);
            ids.push_back(it->second);
            covered[it->second] = true;
        }
        std::vector<int> key = ids;
        std::sort(key.begin(), key.end());
        if (seen.insert(key).second) s.edges.push_back(std::move(ids));
    }
    for (std::size_t i = 0; i < covered.size(); ++i)
        if (!covered[i])
            throw UncoveredVertex("vertex in no edge: " + s.vertices[i]);
    return s;
}

static OrthogonalityGraph shared_edge_graph(const Scenario& s, bool adjacentWhenShared) {
    const std::size_t n = s.vertices.size();
    std::vector<std::vector<bool>> share(n, std::vector<bool>(n, false));
    for (const auto& e : s.edges)
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j)
                share[e[i]][e[j]] = share[e[j]][e[i]] = true;

    OrthogonalityGraph g;
    g.vertices = s.vertices;
    g.adj.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) g.adj[i][j] = adjacentWhenShared ? share[i][j] : !share[i][j];
    return g;
}

OrthogonalityGraph non_orthogonality_graph(const Scenario& s) {
    return shared_edge_graph(s, false);
}

OrthogonalityGraph exclusivity_graph(const Scenario& s) {
    return shared_edge_graph(s, true);
}

namespace {

// Collects the one-way edges where `first` measures one of its edges and the
// other side's measurement is chosen per outcome of the first.
void one_way_edges(const Scenario& first, const Scenario& second, bool firstIsLeft,
                   int rightCount, std::set<std::vector<int>>& out) {
    const int nSecondEdges = static_cast<int>(second.edges.size());
    for (const auto& eF : first.edges) {
        const std::size_t deg = eF.size();
        std::vector<int> choice(deg, 0); // edge of `second` per outcome of eF
        for (;;) {
            std::vector<int> edge;
            for (std::size_t i = 0; i < deg; ++i)
                for (int w : second.edges[choice[i]]) {
                    const int v = eF[i];
                    edge.push_back(firstIsLeft ? v * rightCount + w
                                               : w * rightCount + v);
                }
            std::sort(edge.begin(), edge.end());
            out.insert(std::move(edge));
            // next choice function
            std::size_t pos = 0;
            while (pos < deg && ++choice[pos] == nSecondEdges) choice[pos++] = 0;
            if (pos == deg) break;
        }
    }
}

} // namespace

Scenario foulis_randall_product(const Scenario& a, const Scenario& b) {
    Scenario s;
    const int nb = static_cast<int>(b.vertices.size());
    for (const auto& va : a.vertices)
        for (const auto& vb : b.vertices)
            s.vertices.push_back("(" + va + "," + vb + ")");

    std::set<std::vector<int>> edges;
    one_way_edges(a, b, true, nb, edges);
    one_way_edges(b, a, false, nb, edges);
    s.edges.assign(edges.begin(), edges.end());
    return s;
}

std::string bell_vertex_name(const std::vector<int>& outcomes,
                             const std::vector<int>& settings) {
    auto join = [](const std::vector<int>& xs) {
        std::string r;
        bool wide = false;
        for (int x : xs) wide = wide || x > 9;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (wide && i) r += ',';
            r += std::to_string(xs[i]);
        }
        return r;
    };
    return "(" + join(outcomes) + "|" + join(settings) + ")";
}

Scenario bell_scenario(int n, int k, int m) {
    if (n < 1 || k < 1 || m < 2)
        throw InvalidDimension("bell_scenario requires n >= 1, k >= 1, m >= 2");

    Scenario single;
    for (int x = 0; x < k; ++x) {
        std::vector<int> edge;
        for (int a = 0; a < m; ++a) {
            single.vertices.push_back(std::to_string(a) + "|" + std::to_string(x));
            edge.push_back(x * m + a);
        }
        single.edges.push_back(std::move(edge));
    }
    if (n == 1) return single;

    // (outcomes, settings) per vertex, maintained through the fold.
    std::vector<std::pair<std::vector<int>, std::vector<int>>> labels;
    for (int x = 0; x < k; ++x)
        for (int a = 0; a < m; ++a)
            labels.push_back({{a}, {x}});

    Scenario acc = single;
    for (int party = 1; party < n; ++party) {
        acc = foulis_randall_product(acc, single);
        std::vector<std::pair<std::vector<int>, std::vector<int>>> next;
        for (const auto& lab : labels)
            for (int x = 0; x < k; ++x)
                for (int a = 0; a < m; ++a) {
                    auto out = lab.first;
                    auto set = lab.second;
                    out.push_back(a);
                    set.push_back(x);
                    next.push_back({std::move(out), std::move(set)});
                }
        labels = std::move(next);
        for (std::size_t i = 0; i < acc.vertices.size(); ++i)
            acc.vertices[i] = bell_vertex_name(labels[i].first, labels[i].second);
    }
    return acc;
}

} // namespace ctx
