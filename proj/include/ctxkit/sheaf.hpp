#ifndef CTXKIT_SHEAF_HPP
#define CTXKIT_SHEAF_HPP

#include "ctxkit/models.hpp"
#include "ctxkit/scenario.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ctx {

// Family of per-context outcome distributions with agreeing marginals.
// Joint outcomes within a context are indexed with the first observable as
// the most significant digit (mixed radix over the context's arities).
struct EmpiricalTable {
    std::vector<std::string> observables;
    std::vector<int> arities;
    std::vector<std::vector<int>> contexts; // observable indices
    std::vector<std::vector<double>> rows;  // one distribution per context

    int row_size(int context) const;
    // Joint index of `assignment` (a value per observable) within a context.
    int joint_index(int context, const std::vector<int>& assignment) const;
};

struct PossibilityTable {
    std::vector<std::string> observables;
    std::vector<int> arities;
    std::vector<std::vector<int>> contexts;
    std::vector<std::vector<int>> rows; // 0/1 entries
};

EmpiricalTable build_table(std::vector<std::string> observables,
                           std::vector<int> arities,
                           std::vector<std::vector<int>> contexts,
                           std::vector<std::vector<double>> rows);

PossibilityTable possibilistic_collapse(const EmpiricalTable& t);

// Probability table spreading each row uniformly over a support pattern.
EmpiricalTable table_from_support(std::vector<std::string> observables,
                                  std::vector<int> arities,
                                  std::vector<std::vector<int>> contexts,
                                  const std::vector<std::vector<int>>& support);

struct GlobalDistribution {
    bool exists = false;
    std::vector<double> weights; // over global assignments, lexicographic order
    std::vector<double> witness; // LP infeasibility certificate otherwise
};

GlobalDistribution has_global_distribution(const EmpiricalTable& t);

// All global assignments consistent with every context's support,
// lexicographic order (first observable most significant).
std::vector<std::vector<int>> global_sections(const PossibilityTable& t);

enum class HierarchyLevel { Noncontextual, Probabilistic, Logical, Strong };

std::string to_string(HierarchyLevel level);

struct HierarchyVerdict {
    HierarchyLevel level;
    GlobalDistribution distribution;           // evidence for Noncontextual
    std::vector<std::vector<int>> sections;    // global sections found
    // A support cell no global section passes through, as (context, joint
    // outcome) — evidence for Logical.
    std::pair<int, int> non_extendable{-1, -1};
};

HierarchyVerdict classify(const EmpiricalTable& t);

// n binary observables x1..xn in a cycle; equality supports on the first
// n-1 contexts {x_i, x_{i+1}} and inequality on {x_n, x_1}.
PossibilityTable liar_cycle(int n);

EmpiricalTable table_of(const PossibilityTable& t);

// Built-in corpus: chsh, hardy, pr_box, kcbs, overprotective_seer,
// sea_battle, hanging_paradox.
std::map<std::string, EmpiricalTable> paradox_tables();

// Bridge to the hypergraph view: one edge per context over (context, joint
// outcome) vertices. Shared-marginal outcomes are NOT merged across
// contexts, so classicality of the result can diverge from
// has_global_distribution when contexts overlap.
std::pair<Scenario, ProbModel> to_scenario(const EmpiricalTable& t);

} // namespace ctx

#endif
