#ifndef CTXKIT_QUANTUM_KERNEL_HPP
#define CTXKIT_QUANTUM_KERNEL_HPP

#include "ctxkit/scenario.hpp"

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

namespace ctx {

using Ket = Eigen::VectorXcd;
using Op = Eigen::MatrixXcd;

bool is_hermitian(const Op& m, double tol = 1e-12);
bool is_psd(const Op& m, double tol = 1e-10);
bool is_projector(const Op& m, double tol = 1e-10);

Op projector(const Ket& v);                    // |v><v| for a unit vector
Op density(const Ket& v);                      // alias of projector, intent marker
double born_probability(const Op& state, const Op& effect);

// Checks effects sum to identity (and idempotence/orthogonality when pvm).
void check_povm(const std::vector<Op>& effects, bool pvm, double tol = 1e-10);

// Shannon entropy (bits) of a distribution; von Neumann entropy (bits) of a
// density operator.
double shannon_entropy(const std::vector<double>& p);
double von_neumann_entropy(const Op& rho);

// --- KCBS pentagon (3-dimensional, five rank-1 projectors) ---------------

struct KcbsRealization {
    Ket state;                       // (0,0,1)
    std::array<Ket, 5> vectors;      // unit vectors in exclusivity-cycle order
    std::array<Op, 5> projectors;    // P_i = |v_i><v_i|
    std::array<Op, 5> observables;   // A_i = 2 P_i - I
    double beta;                     // sum <P_i>      (= sqrt(5))
    double alpha_corr;               // sum <A_i A_{i+1}>  (= 5 - 4 sqrt 5)
    // Largest deviation of the printed normalization prefactors from the
    // true unit normalization; nonzero because the published prefactors
    // (1/sqrt2, 1/sqrt3) are typos for 1/sqrt(1 + cos(pi/5)).
    double printed_norm_deviation;
};

KcbsRealization kcbs_realization();

// --- Mermin-Peres magic square (two qubits) --------------------------------

struct MerminPeresSquare {
    std::array<std::array<Op, 3>, 3> grid; // rows A B C / a b c / alpha beta gamma
    std::array<Op, 3> row_products;        // all +I
    std::array<Op, 3> col_products;        // +I, +I, -I
    double chi(const Op& rho) const;       // state-independent value 6
};

MerminPeresSquare mermin_peres_square();

// --- Cabello 18-vector Kochen-Specker set (dimension 4) --------------------

struct Cabello18 {
    std::vector<Ket> vectors;              // 18 unit vectors
    std::vector<std::vector<int>> bases;   // 9 four-element index families
    std::vector<std::vector<Op>> pvms;     // matching projector families
    Scenario scenario;                     // 18 vertices, 9 edges, degree 2
};

// Vector file: '#' comments; one vector per line as 8 whitespace-separated
// reals (re, im per component).
std::vector<Ket> load_vectors(const std::string& path, int dim);
Cabello18 cabello18(const std::vector<Ket>& vectors);

// --- Weak-measurement POVM (Annex-style two-outcome qubit measurement) -----

enum class WeakVariant { RareClick, Symmetric };

struct WeakPovm {
    std::vector<Op> effects; // E_0, E_1
    std::vector<Op> kraus;   // A_0, A_1 with A_k^dag A_k = E_k
    double epsilon;
    WeakVariant variant;
};

WeakPovm weak_povm(double epsilon, WeakVariant variant);

struct MeasurementEntropies {
    double shannon;              // outcome entropy (bits)
    double von_neumann_decrease; // S(rho) - average post-measurement S
};

MeasurementEntropies measurement_entropies(const WeakPovm& m, const Op& rho);

} // namespace ctx

#endif
