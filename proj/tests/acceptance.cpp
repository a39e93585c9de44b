// Acceptance gate: one line per criterion, nonzero exit on any failure.
#include "ctxkit/errors.hpp"
#include "ctxkit/graph_invariants.hpp"
#include "ctxkit/models.hpp"
#include "ctxkit/ontomodels.hpp"
#include "ctxkit/pps_weak.hpp"
#include "ctxkit/quantum_kernel.hpp"
#include "ctxkit/scenario.hpp"
#include "ctxkit/sheaf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace ctx;

namespace {

int failures = 0;

void criterion(int n, const std::string& what, const std::function<void()>& body) {
    try {
        body();
        std::printf("PASS %2d  %s\n", n, what.c_str());
    } catch (const std::exception& ex) {
        ++failures;
        std::printf("FAIL %2d  %s -- %s\n", n, what.c_str(), ex.what());
    }
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

void require_near(double actual, double expected, double tol, const std::string& what) {
    if (std::abs(actual - expected) > tol) {
        std::ostringstream os;
        os << what << ": got " << actual << ", expected " << expected << " +/- " << tol;
        throw std::runtime_error(os.str());
    }
}

Ket random_ket(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Ket v(dim);
    for (int i = 0; i < dim; ++i) v(i) = std::complex<double>(gauss(rng), gauss(rng));
    return v.normalized();
}

std::vector<std::pair<int, int>> chsh_exclusivity_edges() {
    struct Event { int a, b, x, y; };
    std::vector<Event> ev;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if ((a ^ b) == (x & y)) ev.push_back({a, b, x, y});
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < ev.size(); ++i)
        for (std::size_t j = i + 1; j < ev.size(); ++j)
            if ((ev[i].x == ev[j].x && ev[i].a != ev[j].a) ||
                (ev[i].y == ev[j].y && ev[i].b != ev[j].b))
                edges.push_back({static_cast<int>(i), static_cast<int>(j)});
    return edges;
}

std::string data_file(const char* name) {
    return std::string(CTXKIT_DATA_DIR) + "/" + name;
}

// Independent global-section enumerator used to cross-check the classifier.
std::vector<std::vector<int>> consistent_assignments(const EmpiricalTable& t) {
    std::size_t total = 1;
    for (int a : t.arities) total *= static_cast<std::size_t>(a);
    std::vector<std::vector<int>> out;
    for (std::size_t g = 0; g < total; ++g) {
        std::vector<int> assign(t.observables.size());
        std::size_t rest = g;
        for (int i = static_cast<int>(assign.size()) - 1; i >= 0; --i) {
            assign[i] = static_cast<int>(rest % t.arities[i]);
            rest /= t.arities[i];
        }
        bool ok = true;
        for (std::size_t c = 0; ok && c < t.contexts.size(); ++c)
            ok = t.rows[c][t.joint_index(static_cast<int>(c), assign)] > 1e-12;
        if (ok) out.push_back(std::move(assign));
    }
    return out;
}

} // namespace

int main() {
    criterion(1, "KCBS pentagon values", [] {
        const auto r = kcbs_realization();
        require_near(r.beta, std::sqrt(5.0), 1e-9, "sum of projector expectations");
        require_near(r.alpha_corr, 5.0 - 4.0 * std::sqrt(5.0), 1e-9, "correlation sum");
        for (int i = 0; i < 5; ++i)
            require(std::abs(r.vectors[i].dot(r.vectors[(i + 1) % 5])) <= 1e-9,
                    "adjacent orthogonality");
    });

    criterion(2, "graph bounds: C5 and the CHSH exclusivity graph", [] {
        const auto c5 = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}},
                                   std::vector<double>(5, 1.0));
        require_near(independence_number(c5).value, 2.0, 1e-12, "alpha(C5)");
        require_near(lovasz_theta(c5), std::sqrt(5.0), 1e-4, "theta(C5)");
        const auto chsh = make_graph(8, chsh_exclusivity_edges(),
                                     std::vector<double>(8, 1.0));
        require_near(independence_number(chsh).value, 3.0, 1e-12, "alpha(CHSH)");
        require_near(lovasz_theta(chsh), 2.0 + std::sqrt(2.0), 1e-4, "theta(CHSH)");
    });

    criterion(3, "Mermin-Peres square: exact products and chi = 6", [] {
        const auto sq = mermin_peres_square();
        const Op I4 = Op::Identity(4, 4);
        for (int r = 0; r < 3; ++r)
            require((sq.row_products[r] - I4).cwiseAbs().maxCoeff() == 0.0, "row product");
        require((sq.col_products[0] - I4).cwiseAbs().maxCoeff() == 0.0, "column product");
        require((sq.col_products[1] - I4).cwiseAbs().maxCoeff() == 0.0, "column product");
        require((sq.col_products[2] + I4).cwiseAbs().maxCoeff() == 0.0, "column product");
        std::mt19937_64 rng(301);
        for (int t = 0; t < 100; ++t)
            require_near(sq.chi(density(random_ket(rng, 4))), 6.0, 1e-9, "chi on a state");
    });

    criterion(4, "18-vector set: no 0/1 coloring, vectors validate as 9 PVMs", [] {
        const auto vectors = load_vectors(data_file("cabello18.txt"), 4);
        const auto c = cabello18(vectors); // throws unless 9 valid PVMs
        require(c.scenario.vertices.size() == 18 && c.scenario.edges.size() == 9,
                "hypergraph shape");
        std::vector<int> degree(18, 0);
        for (const auto& e : c.scenario.edges)
            for (int v : e) ++degree[v];
        require(std::all_of(degree.begin(), degree.end(), [](int d) { return d == 2; }),
                "degree-2 sharing");
        require(!ks_colorable(c.scenario).has_value(), "a coloring was found");
    });

    criterion(5, "sheaf hierarchy classification of the corpus", [] {
        const auto corpus = paradox_tables();
        require(classify(corpus.at("chsh")).level == HierarchyLevel::Probabilistic,
                "chsh level");
        const auto hardy = classify(corpus.at("hardy"));
        require(hardy.level == HierarchyLevel::Logical, "hardy level");
        require(hardy.non_extendable == std::make_pair(0, 0), "hardy witness cell");
        for (const char* name : {"pr_box", "kcbs", "overprotective_seer", "hanging_paradox"})
            require(classify(corpus.at(name)).level == HierarchyLevel::Strong,
                    std::string(name) + " level");
        require(classify(corpus.at("sea_battle")).level == HierarchyLevel::Logical,
                "sea_battle level");
        auto liarRows = liar_cycle(4).rows;
        auto prRows = possibilistic_collapse(corpus.at("pr_box")).rows;
        std::sort(liarRows.begin(), liarRows.end());
        std::sort(prRows.begin(), prRows.end());
        require(liarRows == prRows, "liar_cycle(4) support vs PR box");
    });

    criterion(6, "LP oracle: no global distribution for CHSH; sum 3.25 > 3", [] {
        const auto t = paradox_tables().at("chsh");
        require(!has_global_distribution(t).exists, "a distribution was found");
        double sum = 0.0;
        for (int c = 0; c < 3; ++c) sum += t.rows[c][0] + t.rows[c][3];
        sum += t.rows[3][1] + t.rows[3][2];
        require_near(sum, 3.25, 1e-12, "winning-event total");
        require(sum > 3.0, "classical bound not exceeded");
    });

    criterion(7, "pre/post-selection gallery values", [] {
        const auto gallery = paradox_gallery();

        const auto& box = gallery.at("three_box");
        require_near(abl_probability(box, "M1", 0), 1.0, 1e-12, "box 1 certainty");
        require_near(abl_probability(box, "M2", 0), 1.0, 1e-12, "box 2 certainty");
        require_near(abl_probability(box, "M1_fine", 0), 1.0 / 3.0, 1e-12,
                     "fine-grained box 1");
        const auto& fineBox = box.measurements.at("M1_fine");
        require_near(weak_value(fineBox[0] + fineBox[1], box.pre, box.post), 2.0, 1e-12,
                     "weak P1+P2");
        require_near(weak_value(fineBox[2], box.pre, box.post), -1.0, 1e-12, "weak P3");

        const auto& cat = gallery.at("cheshire");
        require_near(abl_probability(cat, "path", 1), 0.0, 1e-12, "right-path ABL");
        require_near(abl_probability(cat, "path_spin", 2), 0.25, 1e-12, "right-plus ABL");
        const auto& path = cat.measurements.at("path");
        const auto& fine = cat.measurements.at("path_spin");
        require_near(weak_value(path[0], cat.pre, cat.post), 1.0, 1e-12, "weak left path");
        require_near(weak_value(path[1], cat.pre, cat.post), 0.0, 1e-12, "weak right path");
        require_near(weak_value(fine[0] - fine[1], cat.pre, cat.post), 0.0, 1e-12,
                     "left polarization");
        require_near(weak_value(fine[2] - fine[3], cat.pre, cat.post), 1.0, 1e-12,
                     "right polarization");
        require_near(weak_value(fine[3], cat.pre, cat.post), -0.5, 1e-12, "weak R-minus");
        // The partial-additivity violation across the fine-grained context.
        const auto conditions = algebraic_conditions(
            {{fine[2], abl_probability(cat, "path_spin", 2)},
             {fine[3], abl_probability(cat, "path_spin", 3)},
             {path[1], abl_probability(cat, "path", 1)},
             {Op::Zero(4, 4), 0.0}});
        require(!conditions.additivity_ok, "additivity violation not flagged");

        const auto& pigeon = gallery.at("pigeonhole");
        for (const char* pair : {"same12", "same13", "same23"})
            require_near(abl_probability(pigeon, pair, 0), 0.0, 1e-12,
                         std::string("same-box ABL ") + pair);
        const auto sq = three_qubit_square();
        for (int c = 0; c < 3; ++c)
            require_near(sq.forced_values[c], -1.0, 1e-12, "forced column value");
    });

    criterion(8, "toy theory: update table, repeatability, Cheshire fractions", [] {
        for (auto m : {ToyMeas::X, ToyMeas::Y, ToyMeas::Z})
            for (auto q : {ToyMeas::X, ToyMeas::Y, ToyMeas::Z}) {
                const auto plus = toy_predict(toy_state_plus(m), q);
                const auto minus = toy_predict(toy_state_minus(m), q);
                if (m == q) {
                    require(plus[0] == Rational(1) && minus[1] == Rational(1),
                            "eigenstate certainty");
                } else {
                    require(plus[0] == Rational(1, 2) && minus[0] == Rational(1, 2),
                            "complementary uniformity");
                }
            }
        std::uint64_t seed = 0;
        for (auto m : {ToyMeas::X, ToyMeas::Y, ToyMeas::Z})
            for (auto q : {ToyMeas::X, ToyMeas::Y, ToyMeas::Z})
                for (int t = 0; t < 10000 / 9 + 1; ++t) {
                    const auto [o1, s1] = toy_measure(toy_state_plus(m), q, seed++);
                    const auto [o2, s2] = toy_measure(s1, q, seed++);
                    require(o1 == o2 && s1 == s2, "repeatability");
                }
        const auto rep = toy_cheshire();
        require(rep.p_right_path == Rational(0), "toy right-path probability");
        require(rep.p_right_spin_plus == Rational(1, 4), "toy right-plus probability");
        require(rep.p_right_spin_minus == Rational(1, 4), "toy right-minus probability");
    });

    criterion(9, "KS qubit model reproduces overlaps to 1e-3", [] {
        std::mt19937_64 rng(309);
        std::normal_distribution<double> gauss(0.0, 1.0);
        auto randomBloch = [&] {
            std::array<double, 3> v;
            double norm = 0.0;
            do {
                for (auto& c : v) c = gauss(rng);
                norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
            } while (norm < 1e-6);
            for (auto& c : v) c /= norm;
            return v;
        };
        for (int t = 0; t < 100; ++t) {
            const auto psi = randomBloch();
            const auto phi = randomBloch();
            const double dot = psi[0] * phi[0] + psi[1] * phi[1] + psi[2] * phi[2];
            require_near(ks_qubit_predict(psi, phi), (1.0 + dot) / 2.0, 1e-3,
                         "quadrature prediction");
        }
    });

    criterion(10, "preparation-contextuality LP: infeasible with feasible controls", [] {
        const auto rep = prep_contextuality_infeasible();
        require(rep.infeasible, "full system unexpectedly feasible");
        require(!rep.farkas.empty(), "missing infeasibility certificate");
        require(rep.control_without_triples, "triple-free control infeasible");
        require(rep.control_without_disjointness, "overlap control infeasible");
    });

    criterion(11, "noncontextuality bound 5/6 and quantum value 1", [] {
        const auto vectors = load_vectors(data_file("cabello18.txt"), 4);
        const auto c = cabello18(vectors);
        const auto r = kunjwal_spekkens_bound(c.scenario, &vectors);
        require_near(r.nc_bound, 5.0 / 6.0, 1e-9, "noncontextual bound");
        require(r.example_assignment_value == 5.0 / 6.0, "example assignment value");
        require_near(r.quantum_value, 1.0, 1e-9, "quantum value");
    });

    criterion(12, "weak POVM family: collapse, click statistics, entropy", [] {
        for (auto variant : {WeakVariant::RareClick, WeakVariant::Symmetric})
            for (const auto& e : weak_povm(1.0, variant).effects)
                require(is_projector(e, 1e-12), "epsilon=1 effect is not projective");
        std::mt19937_64 rng(312);
        const double eps = 0.3;
        const auto rare = weak_povm(eps, WeakVariant::RareClick);
        for (int t = 0; t < 50; ++t) {
            const Ket psi = random_ket(rng, 2);
            require_near(born_probability(density(psi), rare.effects[0]),
                         1.0 - eps * std::norm(psi(1)), 1e-12, "no-click probability");
        }
        const double small = 0.03;
        const auto sym = weak_povm(small, WeakVariant::Symmetric);
        const auto ent = measurement_entropies(sym, Op::Identity(2, 2) / 2.0);
        require_near(ent.von_neumann_decrease, small * small / (2.0 * std::log(2.0)), 1e-6,
                     "entropy decrease");
    });

    criterion(13, "property suites over the corpus and random instances", [] {
        // Per-edge normalization of every deterministic model.
        std::mt19937_64 rng(313);
        for (int trial = 0; trial < 20; ++trial) {
            const auto s = bell_scenario(1 + static_cast<int>(rng() % 2),
                                         1 + static_cast<int>(rng() % 2),
                                         2 + static_cast<int>(rng() % 2));
            for (const auto& det : enumerate_deterministic(s))
                for (const auto& e : s.edges) {
                    double sum = 0.0;
                    for (int v : e) sum += det.values[v];
                    require(sum == 1.0, "edge normalization");
                }
        }
        // Classical mixtures never signal.
        const auto s222 = bell_scenario(2, 2, 2);
        const auto dets = enumerate_deterministic(s222);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<double> w(dets.size());
            double total = 0.0;
            for (auto& wi : w) total += (wi = unif(rng));
            std::vector<double> values(s222.vertices.size(), 0.0);
            for (std::size_t l = 0; l < dets.size(); ++l)
                for (std::size_t v = 0; v < values.size(); ++v)
                    values[v] += (w[l] / total) * dets[l].values[v];
            const auto m = validate_model(s222, values);
            require(is_classical(s222, m).classical, "mixture not classical");
            require(is_no_signaling(s222, m, {2, 2, 2}).no_signaling, "mixture signals");
        }
        // Hierarchy levels cross-checked against the independent enumerator.
        auto tables = paradox_tables();
        for (int n = 3; n <= 6; ++n)
            tables["liar" + std::to_string(n)] = table_of(liar_cycle(n));
        for (const auto& [name, t] : tables) {
            const auto level = classify(t).level;
            const auto sections = consistent_assignments(t);
            require((level == HierarchyLevel::Strong) == sections.empty(),
                    name + ": strong contextuality vs section enumeration");
            require((level == HierarchyLevel::Noncontextual) ==
                        has_global_distribution(t).exists,
                    name + ": noncontextuality vs distribution LP");
        }
        // alpha <= theta on random weighted graphs.
        for (int trial = 0; trial < 60; ++trial) {
            const int n = 3 + static_cast<int>(rng() % 7);
            std::vector<std::pair<int, int>> edges;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (unif(rng) < 0.45) edges.push_back({i, j});
            std::vector<double> w(n);
            for (auto& wi : w) wi = 0.1 + unif(rng);
            const auto rep = csw_report(make_graph(n, std::move(edges), std::move(w)));
            require(rep.alpha <= rep.theta + 1e-5, "alpha exceeds theta");
        }
        // ABL normalization on random experiments.
        int checked = 0;
        for (int trial = 0; trial < 120 && checked < 80; ++trial) {
            const int dim = 2 + static_cast<int>(rng() % 3);
            const Ket pre = random_ket(rng, dim);
            const Ket post = random_ket(rng, dim);
            if (std::abs(post.dot(pre)) < 1e-6) continue;
            Eigen::MatrixXcd M(dim, dim);
            for (int i = 0; i < dim; ++i) M.col(i) = random_ket(rng, dim);
            const Eigen::MatrixXcd Q =
                Eigen::HouseholderQR<Eigen::MatrixXcd>(M).householderQ();
            std::vector<Op> pvm;
            for (int i = 0; i < dim; ++i) pvm.push_back(projector(Q.col(i)));
            const PPSExperiment e{pre, post, {{"M", pvm}}};
            double total = 0.0;
            bool skip = false;
            for (int k = 0; k < dim; ++k) {
                try {
                    total += abl_probability(e, "M", static_cast<std::size_t>(k));
                } catch (const ZeroPostSelectionProbability&) {
                    skip = true;
                    break;
                }
            }
            if (skip) continue;
            require_near(total, 1.0, 1e-9, "ABL normalization");
            ++checked;
        }
        require(checked >= 80, "too few ABL instances sampled");
    });

    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}
