#ifndef CTXKIT_PPS_WEAK_HPP
#define CTXKIT_PPS_WEAK_HPP

#include "ctxkit/quantum_kernel.hpp"

#include <map>
#include <string>
#include <vector>

namespace ctx {

// Pre/post-selected experiment with named intermediate measurements.
struct PPSExperiment {
    Ket pre;
    Ket post;
    std::map<std::string, std::vector<Op>> measurements; // name -> PVM
};

// Conditional probability of outcome k of the named PVM between the
// selections: |<post|P_k|pre>|^2 / sum_j |<post|P_j|pre>|^2.
double abl_probability(const PPSExperiment& e, const std::string& measurement,
                       std::size_t outcome);

// Re(<post|A|pre> / <post|pre>).
double weak_value(const Op& op, const Ket& pre, const Ket& post);

struct AlgebraicConditionReport {
    bool range_ok = true;          // (alpha) all values in [0,1]
    bool boundary_ok = true;       // (beta)  f(0)=0 and f(I)=1 where present
    bool additivity_ok = true;     // (gamma) f(P v Q) = f(P)+f(Q)-f(PQ), commuting pairs
    std::string violation;         // description of the first failure
};

// f given as explicit (projector, value) pairs; (gamma) is checked on every
// commuting pair whose meet and join both carry values.
AlgebraicConditionReport algebraic_conditions(const std::vector<std::pair<Op, double>>& f);

// Closes `family` under meets/joins of commuting pairs (capped at 64
// projectors), assigns every element its binary-context ABL value, and runs
// algebraic_conditions. Throws FamilyNotClosed when the cap is hit.
std::vector<std::pair<Op, double>> abl_closure(const PPSExperiment& e,
                                               const std::vector<Op>& family);

struct LogicalParadoxVerdict {
    bool logical = false;
    std::string violated; // which algebraic condition fails, when logical
};

// True iff the supplied projectors all get ABL values in {0,1}, the
// selections are non-orthogonal, and the ABL-valued closure violates an
// algebraic condition.
LogicalParadoxVerdict is_logical_pps_paradox(const PPSExperiment& e,
                                             const std::vector<Op>& family);

// Projectors of the family whose weak value escapes [0,1].
std::vector<std::pair<std::size_t, double>> anomalous_weak_values(
    const PPSExperiment& e, const std::vector<Op>& family);

std::map<std::string, PPSExperiment> paradox_gallery();

// Three-qubit magic square driven by the pigeonhole selections: the ABL rule
// forces ZIZ = ZZI = IZZ = -1 although their product is +I.
struct ThreeQubitSquare {
    std::array<std::array<Op, 3>, 3> grid;      // rows Z.., X.., Y..-type
    std::array<std::string, 9> labels;
    std::array<Op, 3> row_products;             // all +I
    std::array<Op, 3> col_products;             // all -I
    Ket pre, post;                              // |+x>^3, |+y>^3
    std::array<double, 3> forced_values;        // ABL-certain values of row 0
    std::string contradiction;                  // the context carrying it
};

ThreeQubitSquare three_qubit_square();

} // namespace ctx

#endif
