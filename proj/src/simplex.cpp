#include "ctxkit/simplex.hpp"

#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>

namespace ctx {

namespace {

// Tableau state: rows kept reduced with respect to the current basis.
struct Tableau {
    std::size_t m, n; // constraint rows, structural columns (artificials add m more)
    std::vector<std::vector<double>> t; // m x (n + m)
    std::vector<double> rhs;            // length m, kept >= 0
    std::vector<std::size_t> basis;     // length m, column index of basic variable

    void pivot(std::size_t pr, std::size_t pc) {
        const double piv = t[pr][pc];
        const double inv = 1.0 / piv;
        for (double& v : t[pr]) v *= inv;
        rhs[pr] *= inv;
        t[pr][pc] = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == pr) continue;
            const double f = t[i][pc];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < t[i].size(); ++j) t[i][j] -= f * t[pr][j];
            t[i][pc] = 0.0;
            rhs[i] -= f * rhs[pr];
            if (rhs[i] < 0.0 && rhs[i] > -1e-12) rhs[i] = 0.0;
        }
    }

    // Maximize cost.x over the current basis. cost has length n + m.
    // Entering columns restricted to [0, maxCol). Returns false on unbounded.
    bool run(const std::vector<double>& cost, std::size_t maxCol) {
        const std::size_t width = n + m;
        std::vector<double> y(m);
        for (;;) {
            for (std::size_t i = 0; i < m; ++i) y[i] = cost[basis[i]];
            // Bland's rule: first column with positive reduced cost.
            std::size_t enter = width;
            for (std::size_t j = 0; j < maxCol; ++j) {
                double r = cost[j];
                for (std::size_t i = 0; i < m; ++i)
                    if (y[i] != 0.0) r -= y[i] * t[i][j];
                if (r > kLpTol) { enter = j; break; }
            }
            if (enter == width) return true; // optimal
            std::size_t leave = m;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                if (t[i][enter] > kLpTol) {
                    const double ratio = rhs[i] / t[i][enter];
                    if (ratio < best - 1e-12 ||
                        (ratio < best + 1e-12 && (leave == m || basis[i] < basis[leave]))) {
                        best = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == m) return false; // unbounded
            pivot(leave, enter);
            basis[leave] = enter;
        }
    }
};

} // namespace

LpResult lp_solve(const std::vector<std::vector<double>>& A,
                  const std::vector<double>& b,
                  const std::vector<double>& c) {
    const std::size_t m = A.size();
    const std::size_t n = m ? A[0].size() : c.size();
    assert(b.size() == m && c.size() == n);

    Tableau tb;
    tb.m = m;
    tb.n = n;
    tb.t.assign(m, std::vector<double>(n + m, 0.0));
    tb.rhs.assign(m, 0.0);
    tb.basis.resize(m);
    std::vector<double> rowSign(m, 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double s = (b[i] < 0.0) ? -1.0 : 1.0;
        rowSign[i] = s;
        for (std::size_t j = 0; j < n; ++j) tb.t[i][j] = s * A[i][j];
        tb.t[i][n + i] = 1.0;
        tb.rhs[i] = s * b[i];
        tb.basis[i] = n + i;
    }

    // Phase 1: maximize minus the sum of artificials.
    std::vector<double> phase1(n + m, 0.0);
    for (std::size_t j = n; j < n + m; ++j) phase1[j] = -1.0;
    tb.run(phase1, n + m);

    double artificialSum = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        if (tb.basis[i] >= n) artificialSum += tb.rhs[i];
    if (artificialSum > 1e-7) {
        // Farkas witness from the phase-1 multipliers: B^{-1} sits in the
        // artificial columns of the reduced tableau.
        LpResult res;
        res.status = LpResult::Status::Infeasible;
        res.farkas.assign(m, 0.0);
        for (std::size_t k = 0; k < m; ++k) {
            double yk = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                if (tb.basis[i] >= n) yk += -1.0 * tb.t[i][n + k];
            res.farkas[k] = -yk * rowSign[k]; // undo row flips; w.b > 0, w^T A <= 0
        }
        return res;
    }

    // Drive remaining zero-level artificials out of the basis.
    for (std::size_t i = 0; i < m; ++i) {
        if (tb.basis[i] < n) continue;
        std::size_t pc = n;
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(tb.t[i][j]) > kLpTol) { pc = j; break; }
        if (pc < n) {
            tb.pivot(i, pc);
            tb.basis[i] = pc;
        }
        // otherwise the row is redundant; harmless because the artificial
        // stays at zero and nothing can enter through this row alone.
    }

    // Phase 2 over structural columns only.
    std::vector<double> cost(n + m, 0.0);
    for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
    if (!tb.run(cost, n)) {
        LpResult res;
        res.status = LpResult::Status::Unbounded;
        return res;
    }

    LpResult res;
    res.status = LpResult::Status::Optimal;
    res.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (tb.basis[i] < n) res.x[tb.basis[i]] = tb.rhs[i];
    res.value = 0.0;
    for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
    return res;
}

LpResult lp_feasible(const std::vector<std::vector<double>>& A,
                     const std::vector<double>& b) {
    const std::size_t n = A.empty() ? 0 : A[0].size();
    return lp_solve(A, b, std::vector<double>(n, 0.0));
}

} // namespace ctx
