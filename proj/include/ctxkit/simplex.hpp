#ifndef CTXKIT_SIMPLEX_HPP
#define CTXKIT_SIMPLEX_HPP

#include <vector>

namespace ctx {

// Dense two-phase primal simplex with Bland's rule for the standard form
//
//   maximize c.x   subject to  A x = b,  x >= 0.
//
// Rows with negative right-hand side are flipped internally. On
// infeasibility a Farkas witness y is returned: y.b > 0 and (y^T A)_j <= 0
// for every column j, certifying that no nonnegative solution exists.
struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status;
    std::vector<double> x;      // primal solution when Optimal
    double value = 0.0;         // c.x when Optimal
    std::vector<double> farkas; // infeasibility witness when Infeasible
};

inline constexpr double kLpTol = 1e-9;

LpResult lp_solve(const std::vector<std::vector<double>>& A,
                  const std::vector<double>& b,
                  const std::vector<double>& c);

// Feasibility of {A x = b, x >= 0} (zero objective).
LpResult lp_feasible(const std::vector<std::vector<double>>& A,
                     const std::vector<double>& b);

} // namespace ctx

#endif
