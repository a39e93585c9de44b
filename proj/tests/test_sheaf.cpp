#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctxkit/errors.hpp"
#include "ctxkit/models.hpp"
#include "ctxkit/sheaf.hpp"

#include <algorithm>
#include <map>

using namespace ctx;

TEST_CASE("CHSH table validates and collapses as expected") {
    const auto t = paradox_tables().at("chsh");
    const auto p = possibilistic_collapse(t);
    CHECK(p.rows[0] == std::vector<int>{1, 0, 0, 1});
    for (int c = 1; c < 4; ++c) CHECK(p.rows[c] == std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("row normalization and marginal agreement are enforced") {
    CHECK_THROWS_AS(build_table({"A", "B"}, {2, 2}, {{0, 1}}, {{0.5, 0.5, 0.0}}),
                    InvalidDimension); // wrong row size
    CHECK_THROWS_AS(build_table({"A", "B"}, {2, 2}, {{0, 1}}, {{0.5, 0.4, 0.0, 0.0}}),
                    RowNotNormalized);
    // Two contexts sharing A with different A-marginals.
    CHECK_THROWS_AS(build_table({"A", "B", "C"}, {2, 2, 2}, {{0, 1}, {0, 2}},
                                {{0.5, 0.0, 0.0, 0.5}, {0.9, 0.0, 0.0, 0.1}}),
                    MarginalMismatch);
}

TEST_CASE("possibilistic collapse marks exactly the supported cells") {
    for (const auto& [name, t] : paradox_tables()) {
        const auto p = possibilistic_collapse(t);
        REQUIRE(p.rows.size() == t.rows.size());
        for (std::size_t c = 0; c < t.rows.size(); ++c)
            for (std::size_t k = 0; k < t.rows[c].size(); ++k)
                CHECK(p.rows[c][k] == (t.rows[c][k] > 1e-12 ? 1 : 0));
        (void)name;
    }
    // Idempotence through the uniform-probability lift, where it is valid.
    for (int n = 3; n <= 6; ++n) {
        const auto once = liar_cycle(n);
        CHECK(possibilistic_collapse(table_of(once)).rows == once.rows);
    }
}

TEST_CASE("PR table is its own collapse") {
    const auto t = paradox_tables().at("pr_box");
    const auto p = possibilistic_collapse(t);
    for (std::size_t c = 0; c < t.rows.size(); ++c)
        for (std::size_t k = 0; k < t.rows[c].size(); ++k)
            CHECK((t.rows[c][k] > 0) == (p.rows[c][k] == 1));
}

TEST_CASE("global distribution: CHSH and PR infeasible, product feasible") {
    const auto corpus = paradox_tables();
    CHECK(!has_global_distribution(corpus.at("chsh")).exists);
    CHECK(!has_global_distribution(corpus.at("pr_box")).exists);

    // Deterministic product table: A=0, B=1 point masses.
    const auto det = build_table({"A", "B"}, {2, 2}, {{0, 1}}, {{0.0, 1.0, 0.0, 0.0}});
    const auto gd = has_global_distribution(det);
    REQUIRE(gd.exists);
    int atoms = 0;
    for (double w : gd.weights) atoms += (w > 1e-9);
    CHECK(atoms == 1);
}

TEST_CASE("feasible distributions re-marginalize to the rows") {
    // A noncontextual correlated table.
    const auto t = build_table({"A", "B", "C"}, {2, 2, 2}, {{0, 1}, {1, 2}, {0, 2}},
                               {{0.5, 0.0, 0.0, 0.5},
                                {0.5, 0.0, 0.0, 0.5},
                                {0.5, 0.0, 0.0, 0.5}});
    const auto gd = has_global_distribution(t);
    REQUIRE(gd.exists);
    // Re-marginalize the weights over global assignments (lexicographic).
    for (std::size_t c = 0; c < t.contexts.size(); ++c) {
        std::vector<double> row(t.row_size(static_cast<int>(c)), 0.0);
        for (std::size_t g = 0; g < gd.weights.size(); ++g) {
            std::vector<int> assign(3);
            std::size_t rest = g;
            for (int i = 2; i >= 0; --i) {
                assign[i] = static_cast<int>(rest % 2);
                rest /= 2;
            }
            row[t.joint_index(static_cast<int>(c), assign)] += gd.weights[g];
        }
        for (std::size_t k = 0; k < row.size(); ++k)
            CHECK(row[k] == doctest::Approx(t.rows[c][k]).epsilon(1e-6));
    }
}

TEST_CASE("hierarchy classification of the corpus") {
    const auto corpus = paradox_tables();
    CHECK(classify(corpus.at("chsh")).level == HierarchyLevel::Probabilistic);
    CHECK(classify(corpus.at("pr_box")).level == HierarchyLevel::Strong);
    CHECK(classify(corpus.at("kcbs")).level == HierarchyLevel::Strong);
    CHECK(classify(corpus.at("overprotective_seer")).level == HierarchyLevel::Strong);
    CHECK(classify(corpus.at("hanging_paradox")).level == HierarchyLevel::Strong);

    const auto hardy = classify(corpus.at("hardy"));
    CHECK(hardy.level == HierarchyLevel::Logical);
    // The non-extendable cell is A=0, B=0 in the first context.
    CHECK(hardy.non_extendable.first == 0);
    CHECK(hardy.non_extendable.second == 0);

    const auto sea = classify(corpus.at("sea_battle"));
    CHECK(sea.level == HierarchyLevel::Logical);
    REQUIRE(sea.sections.size() == 2);
    CHECK(sea.sections[0] == std::vector<int>{0, 0, 0});
    CHECK(sea.sections[1] == std::vector<int>{1, 1, 1});
}

TEST_CASE("hanging paradox classifies identically to kcbs") {
    const auto corpus = paradox_tables();
    const auto a = classify(corpus.at("hanging_paradox"));
    const auto b = classify(corpus.at("kcbs"));
    CHECK(a.level == b.level);
    CHECK(possibilistic_collapse(corpus.at("hanging_paradox")).rows ==
          possibilistic_collapse(corpus.at("kcbs")).rows);
}

TEST_CASE("liar cycles") {
    CHECK_THROWS_AS(liar_cycle(1), InvalidDimension);

    // n = 4 support matches the PR box rows as a multiset.
    const auto liar4 = liar_cycle(4);
    auto liarRows = liar4.rows;
    auto prRows = possibilistic_collapse(paradox_tables().at("pr_box")).rows;
    std::sort(liarRows.begin(), liarRows.end());
    std::sort(prRows.begin(), prRows.end());
    CHECK(liarRows == prRows);

    // No consistent truth assignment exists for any cycle length; the n = 2
    // case is checked at the possibilistic level because its two contexts
    // cover the same observable pair, so no probability table lifts it.
    for (int n = 2; n <= 8; ++n)
        CHECK(global_sections(liar_cycle(n)).empty());
    for (int n = 3; n <= 8; ++n)
        CHECK(classify(table_of(liar_cycle(n))).level == HierarchyLevel::Strong);
}

TEST_CASE("CHSH winning-event total is 3.25") {
    const auto t = paradox_tables().at("chsh");
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) sum += t.rows[c][0] + t.rows[c][3];
    sum += t.rows[3][1] + t.rows[3][2];
    CHECK(sum == doctest::Approx(3.25));
    CHECK(sum > 3.0); // classical bound
}

TEST_CASE("to_scenario bridges to validated models") {
    const auto pr = paradox_tables().at("pr_box");
    const auto [s, m] = to_scenario(pr);
    CHECK(s.edges.size() == 4);
    for (const auto& e : s.edges) CHECK(e.size() == 4);
    validate_model(s, m.values); // no throw

    const auto single = build_table({"A"}, {3}, {{0}}, {{0.2, 0.3, 0.5}});
    const auto [s1, m1] = to_scenario(single);
    CHECK(s1.edges.size() == 1);
    CHECK(m1.values == std::vector<double>{0.2, 0.3, 0.5});
}

TEST_CASE("state space guard") {
    // 21 binary observables exceed the 10^6 assignment cap.
    std::vector<std::string> obs;
    std::vector<int> ar;
    std::vector<std::vector<int>> ctxs;
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 21; ++i) {
        obs.push_back("o" + std::to_string(i));
        ar.push_back(2);
        ctxs.push_back({i});
        rows.push_back({0.5, 0.5});
    }
    const auto t = build_table(obs, ar, ctxs, rows);
    CHECK_THROWS_AS(has_global_distribution(t), StateSpaceTooLarge);
}

TEST_CASE("joint indexing is mixed radix with the first observable most significant") {
    EmpiricalTable t;
    t.observables = {"A", "B"};
    t.arities = {2, 3};
    t.contexts = {{0, 1}};
    CHECK(t.row_size(0) == 6);
    CHECK(t.joint_index(0, {1, 2}) == 5);
    CHECK(t.joint_index(0, {1, 0}) == 3);
    CHECK(t.joint_index(0, {0, 2}) == 2);
}
