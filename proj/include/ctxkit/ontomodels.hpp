#ifndef CTXKIT_ONTOMODELS_HPP
#define CTXKIT_ONTOMODELS_HPP

#include "ctxkit/quantum_kernel.hpp"
#include "ctxkit/scenario.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ctx {

// Finite ontological model: epistemic distributions over a finite ontic
// space and per-measurement response functions.
struct OntologicalModel {
    int lambda_count = 0;
    std::map<std::string, std::vector<double>> preparations;          // mu_P
    std::map<std::string, std::vector<std::vector<double>>> measurements; // xi[k][lambda]
};

std::vector<double> predict(const OntologicalModel& m, const std::string& preparation,
                            const std::string& measurement);

// psi-ontic model over the listed pure states: deterministic epistemic
// states, Born-rule responses; reproduces quantum statistics exactly.
OntologicalModel beltrametti_bugajski(const std::vector<std::pair<std::string, Ket>>& states,
                                      const std::map<std::string, std::vector<Op>>& pvms);

// --- Exact rationals (the toy module never touches floats) -----------------

struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d = 1);
    Rational operator+(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    double to_double() const { return static_cast<double>(num) / den; }
};

// --- Spekkens toy bit -------------------------------------------------------
//
// Ontic states 0..3 encode (a,b) with a,b in {+,-}: 0=(+,+), 1=(+,-),
// 2=(-,+), 3=(-,-). X answers "a?", Z answers "b?", Y answers "a==b?".
// The six maximal epistemic states are the partition cells.

enum class ToyMeas { X, Y, Z };

struct ToyState {
    std::uint8_t support; // bitmask over ontic states 0..3, 2 or 4 bits set

    bool operator==(const ToyState& o) const { return support == o.support; }
};

ToyState toy_state_plus(ToyMeas m);  // +x, +y, +z
ToyState toy_state_minus(ToyMeas m); // -x, -y, -z
ToyState toy_state_mixed();          // the size-4 maximally ignorant state

// Outcome distribution (P(+1), P(-1)) as exact rationals.
std::array<Rational, 2> toy_predict(const ToyState& s, ToyMeas m);

// Samples an outcome and applies the measurement disturbance: the updated
// state is the maximal epistemic state of the observed partition cell.
std::pair<int, ToyState> toy_measure(const ToyState& s, ToyMeas m, std::uint64_t seed);

// Two-toy-bit Cheshire reproduction: pre = (+x) o (+z), post = the
// perfectly correlated 4-state analog of the entangled selection.
struct ToyCheshireReport {
    Rational p_right_path;        // P(path = right | both selections)
    Rational p_right_spin_plus;   // P(path = right, spin +)
    Rational p_right_spin_minus;  // P(path = right, spin -)
    Rational post_selection_prob; // total over the fine-grained outcomes
    Rational joint_right_path;    // P(right-path outcome AND post-selection)
};

ToyCheshireReport toy_cheshire();

// --- Kochen-Specker qubit model ---------------------------------------------

// Epistemic density (1/pi) H(psi.lambda) psi.lambda on the Bloch sphere with
// indicator responses; quadrature reproduces |<psi|phi>|^2 = (1+psi.phi)/2.
double ks_qubit_predict(const std::array<double, 3>& psi,
                        const std::array<double, 3>& phi, int resolution = 256);

// --- Preparation contextuality (six qubit states, four ensembles) ----------

struct PrepContextualityReport {
    bool infeasible = false;              // the full constraint system
    std::vector<double> farkas;           // infeasibility certificate
    bool control_without_triples = false; // feasible when 1/3-mixtures dropped
    bool control_without_disjointness = false; // feasible when overlaps allowed
};

PrepContextualityReport prep_contextuality_infeasible();

// --- Kunjwal-Spekkens noncontextuality bound --------------------------------

struct KunjwalSpekkensResult {
    double nc_bound = 0.0;                   // max average edge predictability
    std::vector<double> best_assignment;     // attaining vertex probabilities
    double example_assignment_value = 0.0;   // the 6x1 + 3x(1/2) assignment
    std::vector<double> example_assignment;
    double quantum_value = 1.0;              // eigenstate preparations
};

// Exhaustive 4^9 enumeration of per-edge argmax selections, each solved as a
// small LP. `vectors`, when given, recomputes the quantum value from the
// projective realization instead of asserting the ideal 1.
KunjwalSpekkensResult kunjwal_spekkens_bound(const Scenario& s,
                                             const std::vector<Ket>* vectors = nullptr);

} // namespace ctx

#endif
