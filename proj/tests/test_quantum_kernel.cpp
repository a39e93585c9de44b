#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctxkit/errors.hpp"
#include "ctxkit/models.hpp"
#include "ctxkit/quantum_kernel.hpp"

#include <cmath>
#include <fstream>
#include <random>

using namespace ctx;

namespace {

Ket random_ket(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Ket v(dim);
    for (int i = 0; i < dim; ++i) v(i) = std::complex<double>(gauss(rng), gauss(rng));
    return v.normalized();
}

std::string data_file(const char* name) {
    return std::string(CTXKIT_DATA_DIR) + "/" + name;
}

} // namespace

TEST_CASE("born probabilities on simple states") {
    Ket zero(2), plus(2);
    zero << 1, 0;
    plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    Ket one(2);
    one << 0, 1;
    CHECK(born_probability(density(zero), projector(zero)) == doctest::Approx(1.0));
    CHECK(born_probability(density(plus), projector(one)) == doctest::Approx(0.5));
    CHECK_THROWS_AS(born_probability(2.0 * density(zero), projector(zero)), NotAState);
    CHECK_THROWS_AS(born_probability(density(zero), -projector(zero)), NotAnEffect);
}

TEST_CASE("born probabilities over a PVM sum to 1") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const Ket psi = random_ket(rng, 4);
        // Random orthonormal basis via QR.
        Eigen::MatrixXcd M(4, 4);
        for (int i = 0; i < 4; ++i) M.col(i) = random_ket(rng, 4);
        const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(M);
        const Eigen::MatrixXcd Q = qr.householderQ();
        std::vector<Op> pvm;
        for (int i = 0; i < 4; ++i) pvm.push_back(projector(Q.col(i)));
        check_povm(pvm, true);
        double total = 0.0;
        for (const auto& p : pvm) total += born_probability(density(psi), p);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("KCBS realization reproduces the pentagon values") {
    const auto r = kcbs_realization();
    CHECK(r.beta == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
    CHECK(r.alpha_corr == doctest::Approx(5.0 - 4.0 * std::sqrt(5.0)).epsilon(1e-9));
    for (int i = 0; i < 5; ++i) {
        const auto overlap = r.vectors[i].dot(r.vectors[(i + 1) % 5]);
        CHECK(std::abs(overlap) <= 1e-9); // adjacent orthogonality
        CHECK(r.vectors[i].norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    // Each projector expectation is 1/sqrt5 for the pole state.
    const Op rho = density(r.state);
    for (const auto& p : r.projectors)
        CHECK(born_probability(rho, p) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-9));
    // The printed normalization prefactors are not unit normalizations.
    CHECK(r.printed_norm_deviation > 1e-3);
}

TEST_CASE("Mermin-Peres square products and chi") {
    const auto sq = mermin_peres_square();
    const Op I4 = Op::Identity(4, 4);
    for (int r = 0; r < 3; ++r)
        CHECK((sq.row_products[r] - I4).cwiseAbs().maxCoeff() == 0.0);
    CHECK((sq.col_products[0] - I4).cwiseAbs().maxCoeff() == 0.0);
    CHECK((sq.col_products[1] - I4).cwiseAbs().maxCoeff() == 0.0);
    CHECK((sq.col_products[2] + I4).cwiseAbs().maxCoeff() == 0.0);

    // Row and column operators commute within their context.
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            const Op& a = sq.grid[r][c];
            const Op& b = sq.grid[r][(c + 1) % 3];
            const Op& d = sq.grid[(r + 1) % 3][c];
            CHECK((a * b - b * a).cwiseAbs().maxCoeff() <= 1e-12);
            CHECK((a * d - d * a).cwiseAbs().maxCoeff() <= 1e-12);
        }

    CHECK(sq.chi(I4 / 4.0) == doctest::Approx(6.0).epsilon(1e-12));
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial)
        CHECK(sq.chi(density(random_ket(rng, 4))) == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("vector file loading") {
    CHECK_THROWS_AS(load_vectors(data_file("missing.txt"), 4), UnknownName);
    const auto vectors = load_vectors(data_file("cabello18.txt"), 4);
    REQUIRE(vectors.size() == 18);
    for (const auto& v : vectors) {
        CHECK(v.size() == 4);
        CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("malformed vector files are rejected") {
    {
        std::ofstream out("bad_width.txt");
        out << "1 0 0 0 0 0\n"; // 6 reals instead of 8
    }
    CHECK_THROWS_AS(load_vectors("bad_width.txt", 4), OutOfRange);
    {
        std::ofstream out("bad_norm.txt");
        out << "1 0 1 0 0 0 0 0\n"; // norm sqrt2
    }
    CHECK_THROWS_AS(load_vectors("bad_norm.txt", 4), NotUnitVector);
}

TEST_CASE("the 18-vector realization validates") {
    const auto vectors = load_vectors(data_file("cabello18.txt"), 4);
    const auto c = cabello18(vectors);
    CHECK(c.scenario.vertices.size() == 18);
    CHECK(c.scenario.edges.size() == 9);
    std::vector<int> degree(18, 0);
    for (const auto& e : c.scenario.edges) {
        CHECK(e.size() == 4);
        for (int v : e) ++degree[v];
    }
    for (int d : degree) CHECK(d == 2);
    CHECK(c.pvms.size() == 9);
}

TEST_CASE("a perturbed vector breaks a PVM") {
    auto vectors = load_vectors(data_file("cabello18.txt"), 4);
    // Rotate the first vector inside a plane not orthogonal to its partners.
    Ket rotated = (vectors[0] + 0.3 * vectors[17]).normalized();
    vectors[0] = rotated;
    CHECK_THROWS_AS(cabello18(vectors), NotAPVM);
}

TEST_CASE("cabello18 input validation") {
    std::vector<Ket> tooFew(3, Ket::Zero(4));
    CHECK_THROWS_AS(cabello18(tooFew), IncidenceMismatch);
}

TEST_CASE("weak POVM families") {
    CHECK_THROWS_AS(weak_povm(-0.1, WeakVariant::RareClick), EpsilonOutOfRange);
    CHECK_THROWS_AS(weak_povm(1.5, WeakVariant::Symmetric), EpsilonOutOfRange);

    // epsilon = 1 collapses to a projective measurement.
    for (auto variant : {WeakVariant::RareClick, WeakVariant::Symmetric}) {
        const auto m = weak_povm(1.0, variant);
        for (const auto& e : m.effects) CHECK(is_projector(e, 1e-12));
    }
    // epsilon = 0 carries no information.
    const auto rare0 = weak_povm(0.0, WeakVariant::RareClick);
    CHECK((rare0.effects[0] - Op::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
    const auto sym0 = weak_povm(0.0, WeakVariant::Symmetric);
    CHECK((sym0.effects[0] - 0.5 * Op::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("rare-click statistics across a state sweep") {
    std::mt19937_64 rng(6);
    const double eps = 0.3;
    const auto m = weak_povm(eps, WeakVariant::RareClick);
    const double hEps = -eps * std::log2(eps) - (1 - eps) * std::log2(1 - eps);
    for (int trial = 0; trial < 100; ++trial) {
        const Ket psi = random_ket(rng, 2);
        const double beta2 = std::norm(psi(1));
        CHECK(born_probability(density(psi), m.effects[0]) ==
              doctest::Approx(1.0 - eps * beta2).epsilon(1e-12));
        const auto ent = measurement_entropies(m, density(psi));
        CHECK(ent.shannon <= hEps + 1e-9);
    }
}

TEST_CASE("post-measurement states stay normalized") {
    std::mt19937_64 rng(8);
    const auto m = weak_povm(0.4, WeakVariant::Symmetric);
    for (int trial = 0; trial < 50; ++trial) {
        const Ket psi = random_ket(rng, 2);
        for (std::size_t k = 0; k < m.effects.size(); ++k) {
            const double p = born_probability(density(psi), m.effects[k]);
            if (p < 1e-12) continue;
            const Ket post = m.kraus[k] * psi / std::sqrt(p);
            CHECK(post.norm() == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("symmetric variant entropy decrease on the maximally mixed state") {
    const double eps = 0.03;
    const auto m = weak_povm(eps, WeakVariant::Symmetric);
    const auto ent = measurement_entropies(m, Op::Identity(2, 2) / 2.0);
    CHECK(std::abs(ent.von_neumann_decrease - eps * eps / (2.0 * std::log(2.0))) <= 1e-6);

    const auto zero = weak_povm(0.0, WeakVariant::Symmetric);
    CHECK(measurement_entropies(zero, Op::Identity(2, 2) / 2.0).von_neumann_decrease ==
          doctest::Approx(0.0).scale(1));
}

TEST_CASE("entropy helpers") {
    CHECK(shannon_entropy({0.5, 0.5}) == doctest::Approx(1.0));
    CHECK(shannon_entropy({1.0, 0.0}) == doctest::Approx(0.0));
    CHECK(von_neumann_entropy(Op::Identity(2, 2) / 2.0) == doctest::Approx(1.0));
}
