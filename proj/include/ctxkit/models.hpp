#ifndef CTXKIT_MODELS_HPP
#define CTXKIT_MODELS_HPP

#include "ctxkit/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ctx {

// Probabilities indexed by scenario vertex order; every edge sums to 1.
struct ProbModel {
    std::vector<double> values;

    bool deterministic(double tol = 0.0) const;
};

ProbModel validate_model(const Scenario& s, const std::vector<double>& values);

// Exhaustive backtracking over 0/1 assignments with exactly one 1 per edge,
// returned duplicate-free in lexicographic order of the value vectors.
std::vector<ProbModel> enumerate_deterministic(const Scenario& s,
                                               long long nodeBudget = 100000000);

struct ClassicalityCertificate {
    bool classical = false;
    std::vector<double> weights; // per deterministic model, when classical
    std::vector<double> witness; // separating hyperplane over (vertices, 1), otherwise
};

// LP feasibility of p as a convex combination of deterministic models.
ClassicalityCertificate is_classical(const Scenario& s, const ProbModel& p);

// Party/setting/outcome structure of a scenario built by bell_scenario.
struct BellStructure {
    int parties, settings, outcomes;
};

struct SignalingReport {
    bool no_signaling = true;
    std::string witness; // description of a violating marginal pair
};

SignalingReport is_no_signaling(const Scenario& s, const ProbModel& p,
                                const BellStructure& bell);

struct ExclusivityReport {
    bool satisfied = true;
    std::vector<int> worst_set; // independent set of NO(H) maximizing total probability
    double worst_total = 0.0;
};

// Consistent exclusivity: every independent set of the non-orthogonality
// graph carries total probability at most 1.
ExclusivityReport satisfies_consistent_exclusivity(const Scenario& s, const ProbModel& p);

// First deterministic model if any; std::nullopt is a Kochen-Specker proof.
std::optional<ProbModel> ks_colorable(const Scenario& s,
                                      long long nodeBudget = 100000000);

} // namespace ctx

#endif
