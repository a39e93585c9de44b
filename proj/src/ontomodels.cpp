#include "ctxkit/ontomodels.hpp"

#include "ctxkit/errors.hpp"
#include "ctxkit/simplex.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>

namespace ctx {

std::vector<double> predict(const OntologicalModel& m, const std::string& preparation,
                            const std::string& measurement) {
    const auto pIt = m.preparations.find(preparation);
    if (pIt == m.preparations.end()) throw UnknownName("unknown preparation " + preparation);
    const auto mIt = m.measurements.find(measurement);
    if (mIt == m.measurements.end()) throw UnknownName("unknown measurement " + measurement);

    const auto& mu = pIt->second;
    std::vector<double> dist;
    for (const auto& xi : mIt->second) {
        double p = 0.0;
        for (int l = 0; l < m.lambda_count; ++l) p += mu[l] * xi[l];
        dist.push_back(p);
    }
    double total = std::accumulate(dist.begin(), dist.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9)
        throw OutOfRange("outcome distribution sums to " + std::to_string(total));
    return dist;
}

OntologicalModel beltrametti_bugajski(const std::vector<std::pair<std::string, Ket>>& states,
                                      const std::map<std::string, std::vector<Op>>& pvms) {
    OntologicalModel m;
    m.lambda_count = static_cast<int>(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        std::vector<double> mu(states.size(), 0.0);
        mu[i] = 1.0;
        m.preparations[states[i].first] = std::move(mu);
    }
    for (const auto& [name, pvm] : pvms) {
        check_povm(pvm, true);
        std::vector<std::vector<double>> xi(pvm.size(),
                                            std::vector<double>(states.size(), 0.0));
        for (std::size_t k = 0; k < pvm.size(); ++k)
            for (std::size_t l = 0; l < states.size(); ++l)
                xi[k][l] = born_probability(density(states[l].second), pvm[k]);
        m.measurements[name] = std::move(xi);
    }
    return m;
}

// --- Rationals ---------------------------------------------------------------

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw OutOfRange("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(num * o.num, den * o.den);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) throw OutOfRange("rational division by zero");
    return Rational(num * o.den, den * o.num);
}

// --- Toy bit -----------------------------------------------------------------

namespace {

// Partition cells as bitmasks over ontic states 0..3 = (+,+),(+,-),(-,+),(-,-).
std::uint8_t toy_cell(ToyMeas m, bool plus) {
    switch (m) {
        case ToyMeas::X: return plus ? 0b0011 : 0b1100; // a component
        case ToyMeas::Z: return plus ? 0b0101 : 0b1010; // b component
        case ToyMeas::Y: return plus ? 0b1001 : 0b0110; // a == b
    }
    return 0;
}

int popcount8(std::uint8_t v) { return std::popcount(static_cast<unsigned>(v)); }

} // namespace

ToyState toy_state_plus(ToyMeas m) { return ToyState{toy_cell(m, true)}; }
ToyState toy_state_minus(ToyMeas m) { return ToyState{toy_cell(m, false)}; }
ToyState toy_state_mixed() { return ToyState{0b1111}; }

std::array<Rational, 2> toy_predict(const ToyState& s, ToyMeas m) {
    const int total = popcount8(s.support);
    const int plus = popcount8(s.support & toy_cell(m, true));
    return {Rational(plus, total), Rational(total - plus, total)};
}

std::pair<int, ToyState> toy_measure(const ToyState& s, ToyMeas m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> states;
    for (int i = 0; i < 4; ++i)
        if (s.support & (1 << i)) states.push_back(i);
    const int ontic = states[std::uniform_int_distribution<std::size_t>(
        0, states.size() - 1)(rng)];
    const bool plus = toy_cell(m, true) & (1 << ontic);
    // Disturbance: the ontic state is rerandomized within the observed cell,
    // so the observer's new epistemic state is exactly that cell.
    return {plus ? +1 : -1, ToyState{toy_cell(m, plus)}};
}

ToyCheshireReport toy_cheshire() {
    // Composite ontic states (i,j) for toy bits A (path) and B (polarization).
    // L = |0> ~ +z, R = |1> ~ -z; |+>/|-> polarization ~ +x/-x.
    const std::uint8_t preA = toy_cell(ToyMeas::X, true);  // (|L>+|R>)/sqrt2
    const std::uint8_t preB = toy_cell(ToyMeas::Z, true);  // |H>
    auto inPre = [&](int i, int j) { return (preA & (1 << i)) && (preB & (1 << j)); };
    auto inPost = [](int i, int j) { return i == j; }; // correlated analog of the
                                                       // entangled post-selection

    // P(outcome) * P(post-selection | outcome) where the intermediate
    // measurement leaves the pair uniformly spread over cellA x cellB.
    auto branch = [&](std::uint8_t cellA, std::uint8_t cellB) {
        int preHits = 0, postHits = 0, cellSize = 0;
        for (int i = 0; i < 4; ++i) {
            if (!(cellA & (1 << i))) continue;
            for (int j = 0; j < 4; ++j) {
                if (!(cellB & (1 << j))) continue;
                ++cellSize;
                if (inPre(i, j)) ++preHits;
                if (inPost(i, j)) ++postHits;
            }
        }
        return Rational(preHits, 4) * Rational(postHits, cellSize);
    };

    const std::uint8_t anyB = preB; // path-only measurement leaves B untouched
    const Rational jointL = branch(toy_cell(ToyMeas::Z, true), anyB);
    const Rational jointR = branch(toy_cell(ToyMeas::Z, false), anyB);

    const Rational jRp = branch(toy_cell(ToyMeas::Z, false), toy_cell(ToyMeas::X, true));
    const Rational jRm = branch(toy_cell(ToyMeas::Z, false), toy_cell(ToyMeas::X, false));
    const Rational jLp = branch(toy_cell(ToyMeas::Z, true), toy_cell(ToyMeas::X, true));
    const Rational jLm = branch(toy_cell(ToyMeas::Z, true), toy_cell(ToyMeas::X, false));

    ToyCheshireReport rep;
    rep.joint_right_path = jointR;
    rep.p_right_path = jointR / (jointL + jointR);
    rep.post_selection_prob = jRp + jRm + jLp + jLm;
    rep.p_right_spin_plus = jRp / rep.post_selection_prob;
    rep.p_right_spin_minus = jRm / rep.post_selection_prob;
    return rep;
}

// --- Kochen-Specker qubit model ----------------------------------------------

double ks_qubit_predict(const std::array<double, 3>& psi,
                        const std::array<double, 3>& phi, int resolution) {
    if (resolution < 64) throw InvalidDimension("quadrature resolution must be >= 64");
    auto norm3 = [](const std::array<double, 3>& v) {
        return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    };
    if (std::abs(norm3(psi) - 1.0) > 1e-9 || std::abs(norm3(phi) - 1.0) > 1e-9)
        throw NotUnitVector("Bloch vectors must be unit length");

    // Frame with psi as the pole. The epistemic density is supported on the
    // psi hemisphere; for fixed polar height u the azimuthal response set
    // {phi.lambda > 0} is an arc of exactly computable measure.
    std::array<double, 3> z = psi;
    std::array<double, 3> t = std::abs(z[0]) > 0.9 ? std::array<double, 3>{0, 1, 0}
                                                   : std::array<double, 3>{1, 0, 0};
    const double tz = t[0] * z[0] + t[1] * z[1] + t[2] * z[2];
    std::array<double, 3> x = {t[0] - tz * z[0], t[1] - tz * z[1], t[2] - tz * z[2]};
    const double xn = norm3(x);
    for (auto& c : x) c /= xn;
    const std::array<double, 3> y = {z[1] * x[2] - z[2] * x[1],
                                     z[2] * x[0] - z[0] * x[2],
                                     z[0] * x[1] - z[1] * x[0]};
    const double fx = phi[0] * x[0] + phi[1] * x[1] + phi[2] * x[2];
    const double fy = phi[0] * y[0] + phi[1] * y[1] + phi[2] * y[2];
    const double fz = phi[0] * z[0] + phi[1] * z[1] + phi[2] * z[2];
    const double b0 = std::hypot(fx, fy);

    auto integrand = [&](double u) {
        const double a = fz * u;
        const double b = b0 * std::sqrt(std::max(0.0, 1.0 - u * u));
        double arc;
        if (a >= b)
            arc = 2.0 * std::numbers::pi;
        else if (a <= -b)
            arc = 0.0;
        else
            arc = 2.0 * std::acos(-a / b);
        return u * arc;
    };

    // Composite Simpson over the polar height of the psi hemisphere.
    const int n = 2 * resolution;
    const double h = 1.0 / n;
    double sum = integrand(0.0) + integrand(1.0);
    for (int k = 1; k < n; ++k) sum += integrand(k * h) * (k % 2 ? 4.0 : 2.0);
    return (sum * h / 3.0) / std::numbers::pi;
}

// --- Preparation contextuality -----------------------------------------------

namespace {

// The six preparations come in three pairs (a,A), (b,B), (c,C) with disjoint
// supports inside each pair; every constraint depends only on membership, so
// the ontic space aggregates into side-pattern atoms (one digit per pair:
// 0 = lower-case side, 1 = capital side, 2 = neither, 3 = both when overlap
// is allowed).
LpResult membership_lp(bool withTriples, bool withDisjointness) {
    const int options = withDisjointness ? 3 : 4;
    const int nAtoms = options * options * options;

    auto digit = [&](int atom, int pair) {
        for (int p = 0; p < pair; ++p) atom /= options;
        return atom % options;
    };
    auto allowed = [&](int atom, int pair, bool capital) {
        const int d = digit(atom, pair);
        return capital ? (d == 1 || d == 3) : (d == 0 || d == 3);
    };

    // Columns: mu per atom, then the six epistemic states per atom.
    const int nStates = 6; // a, A, b, B, c, C in pair-major order
    auto col = [&](int state, int atom) { return (state + 1) * nAtoms + atom; };
    const int nCols = (nStates + 1) * nAtoms;

    std::vector<std::vector<double>> A;
    std::vector<double> b;
    auto addRow = [&]() -> std::vector<double>& {
        A.push_back(std::vector<double>(nCols, 0.0));
        b.push_back(0.0);
        return A.back();
    };

    for (int atom = 0; atom < nAtoms; ++atom) {
        for (int pair = 0; pair < 3; ++pair) { // mu = (m_lower + m_upper) / 2
            auto& row = addRow();
            row[atom] = 1.0;
            if (allowed(atom, pair, false)) row[col(2 * pair, atom)] = -0.5;
            if (allowed(atom, pair, true)) row[col(2 * pair + 1, atom)] = -0.5;
        }
        if (withTriples) { // mu = (m_a + m_b + m_c) / 3 and capital analog
            for (int capital = 0; capital < 2; ++capital) {
                auto& row = addRow();
                row[atom] = 1.0;
                for (int pair = 0; pair < 3; ++pair)
                    if (allowed(atom, pair, capital))
                        row[col(2 * pair + capital, atom)] = -1.0 / 3.0;
            }
        }
    }
    { // total measure of the maximally mixed preparation
        auto& row = addRow();
        for (int atom = 0; atom < nAtoms; ++atom) row[atom] = 1.0;
        b.back() = 1.0;
    }
    for (int state = 0; state < nStates; ++state) { // each epistemic state normalized
        auto& row = addRow();
        for (int atom = 0; atom < nAtoms; ++atom) {
            const int pair = state / 2;
            if (allowed(atom, pair, state % 2)) row[col(state, atom)] = 1.0;
        }
        b.back() = 1.0;
    }

    return lp_feasible(A, b);
}

} // namespace

PrepContextualityReport prep_contextuality_infeasible() {
    PrepContextualityReport rep;
    const auto full = membership_lp(true, true);
    rep.infeasible = full.status == LpResult::Status::Infeasible;
    rep.farkas = full.farkas;
    rep.control_without_triples =
        membership_lp(false, true).status == LpResult::Status::Optimal;
    rep.control_without_disjointness =
        membership_lp(true, false).status == LpResult::Status::Optimal;
    return rep;
}

// --- Kunjwal-Spekkens bound ----------------------------------------------------

namespace {

void require_cabello_shape(const Scenario& s) {
    if (s.vertices.size() != 18 || s.edges.size() != 9)
        throw StructureMismatch("expected an 18-vertex, 9-edge hypergraph");
    std::vector<int> degree(18, 0);
    for (const auto& e : s.edges) {
        if (e.size() != 4) throw StructureMismatch("expected 4-outcome measurements");
        for (int v : e) ++degree[v];
    }
    for (int d : degree)
        if (d != 2) throw StructureMismatch("expected every outcome in exactly 2 edges");
}

// The reference assignment: three edges forming a triangle get 1/2 on their
// two shared vertices; the remaining six edges are covered pairwise by three
// shared vertices set to 1.
std::vector<double> example_assignment_for(const Scenario& s) {
    const int nE = static_cast<int>(s.edges.size());
    std::vector<std::vector<std::vector<int>>> shared(nE, std::vector<std::vector<int>>(nE));
    for (int i = 0; i < nE; ++i)
        for (int j = i + 1; j < nE; ++j)
            for (int v : s.edges[i])
                if (std::count(s.edges[j].begin(), s.edges[j].end(), v))
                    shared[i][j].push_back(v);

    for (int e1 = 0; e1 < nE; ++e1)
        for (int e2 = e1 + 1; e2 < nE; ++e2)
            for (int e3 = e2 + 1; e3 < nE; ++e3) {
                if (shared[e1][e2].empty() || shared[e2][e3].empty() ||
                    shared[e1][e3].empty())
                    continue;
                for (int v12 : shared[e1][e2])
                    for (int v23 : shared[e2][e3])
                        for (int v13 : shared[e1][e3]) {
                            if (v12 == v23 || v23 == v13 || v12 == v13) continue;
                            // Match the remaining six edges in pairs through a
                            // shared vertex outside the triangle edges.
                            std::vector<int> rest;
                            for (int e = 0; e < nE; ++e)
                                if (e != e1 && e != e2 && e != e3) rest.push_back(e);
                            std::vector<bool> inTriangle(s.vertices.size(), false);
                            for (int e : {e1, e2, e3})
                                for (int v : s.edges[e]) inTriangle[v] = true;

                            std::vector<int> ones;
                            std::vector<bool> used(rest.size(), false);
                            std::function<bool(std::size_t)> match = [&](std::size_t k) {
                                while (k < rest.size() && used[k]) ++k;
                                if (k == rest.size()) return true;
                                used[k] = true;
                                for (std::size_t l = k + 1; l < rest.size(); ++l) {
                                    if (used[l]) continue;
                                    for (int v : shared[std::min(rest[k], rest[l])]
                                                        [std::max(rest[k], rest[l])]) {
                                        if (inTriangle[v]) continue;
                                        used[l] = true;
                                        ones.push_back(v);
                                        if (match(k + 1)) return true;
                                        ones.pop_back();
                                        used[l] = false;
                                    }
                                }
                                used[k] = false;
                                return false;
                            };
                            if (!match(0)) continue;

                            std::vector<double> p(s.vertices.size(), 0.0);
                            for (int v : {v12, v23, v13}) p[v] = 0.5;
                            for (int v : ones) p[v] = 1.0;
                            bool valid = true;
                            for (const auto& e : s.edges) {
                                double sum = 0.0;
                                for (int v : e) sum += p[v];
                                valid = valid && sum == 1.0;
                            }
                            if (valid) return p;
                        }
            }
    throw StructureMismatch("no triangle-plus-matching assignment exists");
}

} // namespace

KunjwalSpekkensResult kunjwal_spekkens_bound(const Scenario& s,
                                             const std::vector<Ket>* vectors) {
    require_cabello_shape(s);
    const int nV = 18, nE = 9;

    // Constant constraint block: per-edge normalization.
    std::vector<std::vector<double>> A(nE, std::vector<double>(nV, 0.0));
    std::vector<double> b(nE, 1.0);
    for (int e = 0; e < nE; ++e)
        for (int v : s.edges[e]) A[e][v] = 1.0;

    KunjwalSpekkensResult res;
    std::vector<double> c(nV, 0.0);
    long long selections = 1;
    for (int e = 0; e < nE; ++e) selections *= 4;
    for (long long sel = 0; sel < selections; ++sel) {
        std::fill(c.begin(), c.end(), 0.0);
        long long rest = sel;
        for (int e = 0; e < nE; ++e) {
            c[s.edges[e][rest & 3]] += 1.0;
            rest >>= 2;
        }
        const auto lp = lp_solve(A, b, c);
        if (lp.status == LpResult::Status::Optimal && lp.value > res.nc_bound * 9) {
            res.nc_bound = lp.value / 9.0;
            res.best_assignment = lp.x;
        }
    }

    res.example_assignment = example_assignment_for(s);
    double total = 0.0;
    for (const auto& e : s.edges) {
        double mx = 0.0;
        for (int v : e) mx = std::max(mx, res.example_assignment[v]);
        total += mx;
    }
    res.example_assignment_value = total / 9.0;

    if (vectors) {
        const auto realization = cabello18(*vectors);
        double sum = 0.0;
        for (int e = 0; e < nE; ++e)
            for (int k = 0; k < 4; ++k) {
                const Ket& v = realization.vectors[realization.bases[e][k]];
                sum += born_probability(density(v), realization.pvms[e][k]);
            }
        res.quantum_value = sum / 36.0;
    }
    return res;
}

} // namespace ctx
