#include "ctxkit/quantum_kernel.hpp"

#include "ctxkit/errors.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <sstream>

namespace ctx {

using namespace std::complex_literals;

bool is_hermitian(const Op& m, double tol) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_psd(const Op& m, double tol) {
    if (!is_hermitian(m, 1e-10)) return false;
    Eigen::SelfAdjointEigenSolver<Op> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

bool is_projector(const Op& m, double tol) {
    return is_hermitian(m, tol) && (m * m - m).cwiseAbs().maxCoeff() <= tol;
}

Op projector(const Ket& v) {
    return v * v.adjoint();
}

Op density(const Ket& v) {
    return projector(v);
}

double born_probability(const Op& state, const Op& effect) {
    if (!is_psd(state, 1e-10) || std::abs(state.trace().real() - 1.0) > 1e-10)
        throw NotAState("state must be positive semidefinite with unit trace");
    if (!is_psd(effect, 1e-10))
        throw NotAnEffect("effect must be positive semidefinite");
    double p = (state * effect).trace().real();
    if (p < -1e-10 || p > 1.0 + 1e-10)
        throw NotAnEffect("Born probability escapes [0,1]: " + std::to_string(p));
    return std::clamp(p, 0.0, 1.0);
}

void check_povm(const std::vector<Op>& effects, bool pvm, double tol) {
    if (effects.empty()) throw NotAPVM("empty effect list");
    const auto dim = effects[0].rows();
    Op sum = Op::Zero(dim, dim);
    for (const auto& e : effects) {
        if (!is_psd(e, tol)) throw NotAPVM("effect not positive semidefinite");
        sum += e;
    }
    if ((sum - Op::Identity(dim, dim)).cwiseAbs().maxCoeff() > tol)
        throw NotAPVM("effects do not sum to identity");
    if (pvm) {
        for (std::size_t i = 0; i < effects.size(); ++i) {
            if (!is_projector(effects[i], tol))
                throw NotAPVM("PVM effect not idempotent");
            for (std::size_t j = i + 1; j < effects.size(); ++j)
                if ((effects[i] * effects[j]).cwiseAbs().maxCoeff() > tol)
                    throw NotAPVM("PVM effects not mutually orthogonal");
        }
    }
}

double shannon_entropy(const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p)
        if (x > 1e-15) h -= x * std::log2(x);
    return h;
}

double von_neumann_entropy(const Op& rho) {
    Eigen::SelfAdjointEigenSolver<Op> es(rho, Eigen::EigenvaluesOnly);
    double h = 0.0;
    for (double lambda : es.eigenvalues())
        if (lambda > 1e-15) h -= lambda * std::log2(lambda);
    return h;
}

KcbsRealization kcbs_realization() {
    const double pi = std::numbers::pi;
    const double c = std::cos(pi / 5.0);
    const double root = std::sqrt(c);

    // Directions as published, indexed 1..5. The published prefactors
    // (1/sqrt2 for the first, 1/sqrt3 for the rest) do not normalize these
    // directions; the unit normalization is 1/sqrt(1 + cos(pi/5)).
    std::array<Eigen::Vector3d, 5> dir = {
        Eigen::Vector3d{1.0, 0.0, root},
        Eigen::Vector3d{std::cos(4 * pi / 5), std::sin(4 * pi / 5), root},
        Eigen::Vector3d{std::cos(2 * pi / 5), -std::sin(2 * pi / 5), root},
        Eigen::Vector3d{std::cos(4 * pi / 5), -std::sin(4 * pi / 5), root},
        Eigen::Vector3d{std::cos(2 * pi / 5), std::sin(2 * pi / 5), root},
    };
    const double printedNorm1 = std::sqrt((1.0 + c) / 2.0);
    const double printedNormRest = std::sqrt((1.0 + c) / 3.0);

    KcbsRealization r;
    r.printed_norm_deviation = std::max(std::abs(printedNorm1 - 1.0),
                                        std::abs(printedNormRest - 1.0));

    // Exclusivity-cycle order: consecutive vectors orthogonal. In published
    // indices the pentagon cycle runs 1-2-3-5-4.
    const std::array<int, 5> cycle = {0, 1, 2, 4, 3};
    for (int i = 0; i < 5; ++i) {
        const Eigen::Vector3d u = dir[cycle[i]].normalized();
        Ket v(3);
        v << u(0), u(1), u(2);
        r.vectors[i] = v;
        r.projectors[i] = projector(v);
        r.observables[i] = 2.0 * r.projectors[i] - Op::Identity(3, 3);
    }

    Ket psi(3);
    psi << 0, 0, 1;
    r.state = psi;
    const Op rho = density(psi);
    r.beta = 0.0;
    r.alpha_corr = 0.0;
    for (int i = 0; i < 5; ++i) {
        r.beta += (rho * r.projectors[i]).trace().real();
        r.alpha_corr +=
            (rho * r.observables[i] * r.observables[(i + 1) % 5]).trace().real();
    }
    return r;
}

namespace {

Op pauli(char which) {
    Op m(2, 2);
    switch (which) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -1i, 1i, 0; break;
        default:  m << 1, 0, 0, -1; break; // 'Z'
    }
    return m;
}

Op kron2(const Op& a, const Op& b) {
    Op r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

} // namespace

double MerminPeresSquare::chi(const Op& rho) const {
    double v = 0.0;
    for (int r = 0; r < 3; ++r) v += (rho * row_products[r]).trace().real();
    v += (rho * col_products[0]).trace().real();
    v += (rho * col_products[1]).trace().real();
    v -= (rho * col_products[2]).trace().real();
    return v;
}

MerminPeresSquare mermin_peres_square() {
    const Op I = pauli('I'), X = pauli('X'), Y = pauli('Y'), Z = pauli('Z');
    MerminPeresSquare sq;
    sq.grid = {{{kron2(Z, I), kron2(I, Z), kron2(Z, Z)},
                {kron2(I, X), kron2(X, I), kron2(X, X)},
                {kron2(Z, X), kron2(X, Z), kron2(Y, Y)}}};
    for (int r = 0; r < 3; ++r)
        sq.row_products[r] = sq.grid[r][0] * sq.grid[r][1] * sq.grid[r][2];
    for (int c = 0; c < 3; ++c)
        sq.col_products[c] = sq.grid[0][c] * sq.grid[1][c] * sq.grid[2][c];
    return sq;
}

std::vector<Ket> load_vectors(const std::string& path, int dim) {
    std::ifstream in(path);
    if (!in) throw UnknownName("cannot open vector file: " + path);
    std::vector<Ket> vectors;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::vector<double> nums;
        double x;
        while (ss >> x) nums.push_back(x);
        if (nums.empty()) continue;
        if (static_cast<int>(nums.size()) != 2 * dim)
            throw OutOfRange("vector line must hold " + std::to_string(2 * dim) +
                             " reals (re im pairs)");
        Ket v(dim);
        for (int i = 0; i < dim; ++i) v(i) = std::complex<double>(nums[2 * i], nums[2 * i + 1]);
        if (std::abs(v.norm() - 1.0) > 1e-9)
            throw NotUnitVector("vector " + std::to_string(vectors.size()) +
                                " is not unit norm");
        vectors.push_back(v.normalized());
    }
    return vectors;
}

Cabello18 cabello18(const std::vector<Ket>& vectors) {
    // Incidence of the 18-vertex, 9-edge, degree-2 hypergraph (vertices in
    // first-appearance order over the nine bases).
    static const std::vector<std::vector<int>> kBases = {
        {0, 1, 2, 3},    {0, 4, 5, 6},    {2, 7, 8, 9},
        {6, 7, 10, 11},  {1, 4, 12, 13},  {8, 10, 13, 14},
        {3, 9, 15, 16},  {5, 11, 15, 17}, {12, 14, 16, 17}};

    if (vectors.size() != 18) throw IncidenceMismatch("expected 18 vectors");
    for (const auto& v : vectors)
        if (v.size() != 4) throw IncidenceMismatch("vectors must have dimension 4");

    // Distinctness up to phase: shared projectors would collapse the degree-2
    // sharing pattern.
    for (int i = 0; i < 18; ++i)
        for (int j = i + 1; j < 18; ++j)
            if (std::abs(std::abs(vectors[i].dot(vectors[j])) - 1.0) < 1e-6)
                throw IncidenceMismatch("vectors " + std::to_string(i) + " and " +
                                        std::to_string(j) + " define the same projector");

    Cabello18 c;
    c.vectors = vectors;
    c.bases = kBases;
    for (const auto& basis : kBases) {
        std::vector<Op> family;
        for (int idx : basis) family.push_back(projector(vectors[idx]));
        try {
            check_povm(family, true);
        } catch (const NotAPVM&) {
            std::string members;
            for (int idx : basis) members += " " + std::to_string(idx);
            throw NotAPVM("family{" + members + " } is not a PVM");
        }
        c.pvms.push_back(std::move(family));
    }

    std::vector<int> degree(18, 0);
    for (const auto& basis : kBases)
        for (int idx : basis) ++degree[idx];
    for (int d : degree)
        if (d != 2) throw IncidenceMismatch("vertex degree differs from 2");

    std::vector<std::string> names;
    for (int i = 0; i < 18; ++i) names.push_back("u" + std::to_string(i));
    std::vector<std::vector<std::string>> edges;
    for (const auto& basis : kBases) {
        std::vector<std::string> e;
        for (int idx : basis) e.push_back(names[idx]);
        edges.push_back(std::move(e));
    }
    c.scenario = new_scenario(names, edges);
    return c;
}

WeakPovm weak_povm(double epsilon, WeakVariant variant) {
    if (epsilon < 0.0 || epsilon > 1.0)
        throw EpsilonOutOfRange("epsilon must lie in [0,1]");
    WeakPovm m;
    m.epsilon = epsilon;
    m.variant = variant;
    Op e0 = Op::Zero(2, 2), e1 = Op::Zero(2, 2);
    if (variant == WeakVariant::RareClick) {
        e0(0, 0) = 1.0;
        e0(1, 1) = 1.0 - epsilon;
        e1(1, 1) = epsilon;
    } else {
        e0(0, 0) = (1.0 + epsilon) / 2.0;
        e0(1, 1) = (1.0 - epsilon) / 2.0;
        e1(0, 0) = (1.0 - epsilon) / 2.0;
        e1(1, 1) = (1.0 + epsilon) / 2.0;
    }
    m.effects = {e0, e1};
    for (const auto& e : m.effects) {
        Op a = Op::Zero(2, 2);
        a(0, 0) = std::sqrt(e(0, 0).real());
        a(1, 1) = std::sqrt(e(1, 1).real());
        m.kraus.push_back(a);
    }
    check_povm(m.effects, false);
    return m;
}

MeasurementEntropies measurement_entropies(const WeakPovm& m, const Op& rho) {
    std::vector<double> p;
    for (const auto& e : m.effects) p.push_back(born_probability(rho, e));

    MeasurementEntropies out;
    out.shannon = shannon_entropy(p);
    double after = 0.0;
    for (std::size_t k = 0; k < m.kraus.size(); ++k) {
        if (p[k] < 1e-15) continue;
        const Op post = m.kraus[k] * rho * m.kraus[k].adjoint() / p[k];
        after += p[k] * von_neumann_entropy(post);
    }
    out.von_neumann_decrease = von_neumann_entropy(rho) - after;
    return out;
}

} // namespace ctx
