#include "ctxkit/graph_invariants.hpp"

#include "ctxkit/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace ctx {

WeightedGraph make_graph(int n, std::vector<std::pair<int, int>> edges,
                         std::vector<double> weights) {
    if (n < 0 || static_cast<int>(weights.size()) != n)
        throw InvalidDimension("graph weight count must equal vertex count");
    for (double w : weights)
        if (w < 0.0) throw OutOfRange("negative vertex weight");
    std::set<std::pair<int, int>> dedup;
    for (auto [i, j] : edges) {
        if (i < 0 || j < 0 || i >= n || j >= n)
            throw OutOfRange("edge endpoint out of range");
        if (i == j) throw OutOfRange("self-loop at vertex " + std::to_string(i));
        dedup.insert({std::min(i, j), std::max(i, j)});
    }
    WeightedGraph g;
    g.n = n;
    g.edges.assign(dedup.begin(), dedup.end());
    g.weights = std::move(weights);
    return g;
}

namespace {

struct AlphaSearch {
    const std::vector<std::vector<bool>>& adj;
    const std::vector<double>& w;
    double best = 0.0;
    std::vector<int> bestSet;
    std::vector<int> current;
    long long nodes = 0;
    static constexpr long long kBudget = 100000000;

    void rec(std::vector<int>& cand, double acc) {
        if (++nodes > kBudget)
            throw SearchBudgetExceeded("independent-set search exceeded node budget");
        if (acc > best + 1e-12) {
            best = acc;
            bestSet = current;
        }
        double remaining = acc;
        for (int v : cand) remaining += w[v];
        if (remaining <= best + 1e-12) return;
        for (std::size_t idx = 0; idx < cand.size(); ++idx) {
            const int v = cand[idx];
            std::vector<int> next;
            for (std::size_t j = idx + 1; j < cand.size(); ++j)
                if (!adj[v][cand[j]]) next.push_back(cand[j]);
            current.push_back(v);
            rec(next, acc + w[v]);
            current.pop_back();
        }
    }
};

} // namespace

IndependenceResult independence_number(const WeightedGraph& g) {
    std::vector<std::vector<bool>> adj(g.n, std::vector<bool>(g.n, false));
    for (auto [i, j] : g.edges) adj[i][j] = adj[j][i] = true;

    // Heavier vertices first: finds good incumbents early, tightening the bound.
    std::vector<int> order(g.n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.weights[a] > g.weights[b]; });

    AlphaSearch search{adj, g.weights};
    search.rec(order, 0.0);
    std::sort(search.bestSet.begin(), search.bestSet.end());
    IndependenceResult res;
    res.value = search.best;
    res.witness = std::move(search.bestSet);
    return res;
}

namespace {

bool is_pd(const Eigen::MatrixXd& m) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    return llt.info() == Eigen::Success;
}

// Primal-dual interior-point method for max <W,X> s.t. X_ij = 0 on edges,
// tr X = 1, X psd (Helmberg-Rendl-Vanderbei-Wolkowicz scheme).
double theta_sdp(const Eigen::MatrixXd& W,
                 const std::vector<std::pair<int, int>>& edges) {
    const int n = static_cast<int>(W.rows());
    const int m1 = static_cast<int>(edges.size());
    const int m = m1 + 1;

    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
    b(m - 1) = 1.0;

    double ym = W.cwiseAbs().rowwise().sum().maxCoeff() + 1.0;
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
    y(m - 1) = ym;
    Eigen::MatrixXd Z = ym * Eigen::MatrixXd::Identity(n, n) - W;
    Eigen::MatrixXd X = Eigen::MatrixXd::Identity(n, n) / n;

    double phi = ym;
    double psi = (W * X).trace();
    double mu = (Z * X).trace() / (2.0 * n);

    const double digits = 1e-8;
    for (int iter = 0; iter < 200; ++iter) {
        if (phi - psi <= std::max(1.0, std::abs(phi)) * digits)
            return 0.5 * (phi + psi);

        Eigen::MatrixXd Zi = Z.llt().solve(Eigen::MatrixXd::Identity(n, n));
        Zi = 0.5 * (Zi + Zi.transpose()).eval();
        Eigen::MatrixXd ZiX = Zi * X;

        Eigen::MatrixXd M(m, m);
        M(m - 1, m - 1) = ZiX.trace();
        for (int k = 0; k < m1; ++k) {
            auto [i, j] = edges[k];
            M(m - 1, k) = ZiX(i, j) + ZiX(j, i);
            M(k, m - 1) = M(m - 1, k);
            for (int l = 0; l < m1; ++l) {
                auto [p, q] = edges[l];
                M(k, l) = Zi(i, q) * X(j, p) + Zi(j, p) * X(i, q) +
                          Zi(i, p) * X(j, q) + Zi(j, q) * X(i, p);
            }
        }

        Eigen::VectorXd rhs(m);
        rhs(m - 1) = Zi.trace();
        for (int k = 0; k < m1; ++k) rhs(k) = 2.0 * Zi(edges[k].first, edges[k].second);

        Eigen::VectorXd dy = M.ldlt().solve(mu * rhs - b);

        Eigen::MatrixXd dZ = dy(m - 1) * Eigen::MatrixXd::Identity(n, n);
        for (int k = 0; k < m1; ++k) {
            auto [i, j] = edges[k];
            dZ(i, j) += dy(k);
            dZ(j, i) += dy(k);
        }
        Eigen::MatrixXd dX = mu * Zi - X - Zi * dZ * X;
        dX = 0.5 * (dX + dX.transpose()).eval();

        double ap = 1.0;
        while (!is_pd(X + ap * dX)) ap *= 0.8;
        if (ap < 1.0) ap *= 0.95;
        double ad = 1.0;
        while (!is_pd(Z + ad * dZ)) ad *= 0.8;
        if (ad < 1.0) ad *= 0.95;

        X += ap * dX;
        y += ad * dy;
        Z += ad * dZ;
        mu = (Z * X).trace() / (2.0 * n);
        if (ap + ad > 1.8) mu *= 0.5;

        phi = b.dot(y);
        psi = (W * X).trace();
    }
    throw SolverDidNotConverge("theta SDP: gap " + std::to_string(phi - psi) +
                               " after 200 iterations");
}

} // namespace

double lovasz_theta(const WeightedGraph& g) {
    // Restrict to the support: zero-weight vertices contribute nothing.
    std::vector<int> keep;
    for (int i = 0; i < g.n; ++i)
        if (g.weights[i] > 1e-12) keep.push_back(i);
    if (keep.empty()) return 0.0;

    std::vector<int> pos(g.n, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);

    const int n = static_cast<int>(keep.size());
    Eigen::MatrixXd W(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            W(i, j) = std::sqrt(g.weights[keep[i]] * g.weights[keep[j]]);

    std::vector<std::pair<int, int>> edges;
    for (auto [i, j] : g.edges)
        if (pos[i] >= 0 && pos[j] >= 0) edges.push_back({pos[i], pos[j]});

    if (n == 1) return g.weights[keep[0]];
    return theta_sdp(W, edges);
}

CswReport csw_report(const WeightedGraph& g) {
    auto alpha = independence_number(g);
    double theta = lovasz_theta(g);
    if (alpha.value > theta + 1e-5)
        throw SolverDidNotConverge("alpha exceeds theta beyond tolerance");
    return CswReport{alpha.value, alpha.witness, theta};
}

} // namespace ctx
