#include "ctxkit/sheaf.hpp"

#include "ctxkit/errors.hpp"
#include "ctxkit/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace ctx {

int EmpiricalTable::row_size(int context) const {
    int sz = 1;
    for (int obs : contexts[context]) sz *= arities[obs];
    return sz;
}

int EmpiricalTable::joint_index(int context, const std::vector<int>& assignment) const {
    int idx = 0;
    for (int obs : contexts[context]) idx = idx * arities[obs] + assignment[obs];
    return idx;
}

namespace {

// Decode joint index `cell` of a context into per-observable outcomes.
std::vector<int> decode(const std::vector<int>& ctxObs, const std::vector<int>& arities,
                        int cell) {
    std::vector<int> out(ctxObs.size());
    for (int i = static_cast<int>(ctxObs.size()) - 1; i >= 0; --i) {
        const int ar = arities[ctxObs[i]];
        out[i] = cell % ar;
        cell /= ar;
    }
    return out;
}

} // namespace

EmpiricalTable build_table(std::vector<std::string> observables,
                           std::vector<int> arities,
                           std::vector<std::vector<int>> contexts,
                           std::vector<std::vector<double>> rows) {
    if (observables.size() != arities.size())
        throw InvalidDimension("one arity per observable required");
    for (int a : arities)
        if (a < 2) throw InvalidDimension("observable arity must be at least 2");
    if (contexts.size() != rows.size())
        throw InvalidDimension("one row per context required");

    EmpiricalTable t;
    t.observables = std::move(observables);
    t.arities = std::move(arities);
    t.contexts = std::move(contexts);
    t.rows = std::move(rows);

    for (std::size_t c = 0; c < t.contexts.size(); ++c) {
        for (int obs : t.contexts[c])
            if (obs < 0 || obs >= static_cast<int>(t.observables.size()))
                throw OutOfRange("context references unknown observable");
        if (static_cast<int>(t.rows[c].size()) != t.row_size(static_cast<int>(c)))
            throw InvalidDimension("row size does not match context arities");
        double sum = 0.0;
        for (double p : t.rows[c]) {
            if (p < -1e-12 || p > 1.0 + 1e-12)
                throw OutOfRange("probability out of [0,1]");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw RowNotNormalized("context " + std::to_string(c) + " row sums to " +
                                   std::to_string(sum));
    }

    // No-disturbance: marginals over shared observables agree pairwise.
    for (std::size_t c1 = 0; c1 < t.contexts.size(); ++c1) {
        for (std::size_t c2 = c1 + 1; c2 < t.contexts.size(); ++c2) {
            std::vector<int> shared;
            for (int o : t.contexts[c1])
                if (std::count(t.contexts[c2].begin(), t.contexts[c2].end(), o))
                    shared.push_back(o);
            if (shared.empty()) continue;

            auto marginal = [&](std::size_t c) {
                std::map<std::vector<int>, double> m;
                for (int cell = 0; cell < t.row_size(static_cast<int>(c)); ++cell) {
                    const auto outs = decode(t.contexts[c], t.arities, cell);
                    std::vector<int> key;
                    for (int o : shared) {
                        const auto it = std::find(t.contexts[c].begin(),
                                                  t.contexts[c].end(), o);
                        key.push_back(outs[it - t.contexts[c].begin()]);
                    }
                    m[key] += t.rows[c][cell];
                }
                return m;
            };
            const auto m1 = marginal(c1), m2 = marginal(c2);
            for (const auto& [key, p1] : m1) {
                const double p2 = m2.at(key);
                if (std::abs(p1 - p2) > 1e-9)
                    throw MarginalMismatch(
                        "contexts " + std::to_string(c1) + " and " + std::to_string(c2) +
                        " disagree on a shared marginal (" + std::to_string(p1) + " vs " +
                        std::to_string(p2) + ")");
            }
        }
    }
    return t;
}

PossibilityTable possibilistic_collapse(const EmpiricalTable& t) {
    PossibilityTable p;
    p.observables = t.observables;
    p.arities = t.arities;
    p.contexts = t.contexts;
    for (const auto& row : t.rows) {
        std::vector<int> r;
        r.reserve(row.size());
        for (double v : row) r.push_back(v > 1e-12 ? 1 : 0);
        p.rows.push_back(std::move(r));
    }
    return p;
}

EmpiricalTable table_from_support(std::vector<std::string> observables,
                                  std::vector<int> arities,
                                  std::vector<std::vector<int>> contexts,
                                  const std::vector<std::vector<int>>& support) {
    std::vector<std::vector<double>> rows;
    for (const auto& srow : support) {
        int count = 0;
        for (int v : srow) count += (v != 0);
        if (count == 0) throw RowNotNormalized("support row with no possible outcome");
        std::vector<double> row;
        row.reserve(srow.size());
        for (int v : srow) row.push_back(v ? 1.0 / count : 0.0);
        rows.push_back(std::move(row));
    }
    return build_table(std::move(observables), std::move(arities), std::move(contexts),
                       std::move(rows));
}

EmpiricalTable table_of(const PossibilityTable& t) {
    return table_from_support(t.observables, t.arities, t.contexts, t.rows);
}

namespace {

long long global_count(const std::vector<int>& arities) {
    long long total = 1;
    for (int a : arities) {
        total *= a;
        if (total > 1000000) throw StateSpaceTooLarge("more than 10^6 global assignments");
    }
    return total;
}

std::vector<int> nth_assignment(const std::vector<int>& arities, long long idx) {
    std::vector<int> g(arities.size());
    for (int i = static_cast<int>(arities.size()) - 1; i >= 0; --i) {
        g[i] = static_cast<int>(idx % arities[i]);
        idx /= arities[i];
    }
    return g;
}

} // namespace

GlobalDistribution has_global_distribution(const EmpiricalTable& t) {
    const long long nG = global_count(t.arities);

    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (std::size_t c = 0; c < t.contexts.size(); ++c) {
        for (int cell = 0; cell < t.row_size(static_cast<int>(c)); ++cell) {
            std::vector<double> row(nG, 0.0);
            for (long long g = 0; g < nG; ++g) {
                const auto assign = nth_assignment(t.arities, g);
                if (t.joint_index(static_cast<int>(c), assign) == cell) row[g] = 1.0;
            }
            A.push_back(std::move(row));
            b.push_back(t.rows[c][cell]);
        }
    }

    auto lp = lp_feasible(A, b);
    GlobalDistribution gd;
    if (lp.status == LpResult::Status::Optimal) {
        gd.exists = true;
        gd.weights = lp.x;
    } else {
        gd.exists = false;
        gd.witness = lp.farkas;
    }
    return gd;
}

std::vector<std::vector<int>> global_sections(const PossibilityTable& t) {
    const std::size_t nObs = t.observables.size();
    std::vector<std::vector<int>> sections;
    std::vector<int> g(nObs, 0);

    // Contexts become checkable once their last-indexed observable is set.
    std::vector<std::vector<int>> readyAt(nObs);
    for (std::size_t c = 0; c < t.contexts.size(); ++c) {
        int last = 0;
        for (int o : t.contexts[c]) last = std::max(last, o);
        readyAt[last].push_back(static_cast<int>(c));
    }

    EmpiricalTable shape; // reuse joint_index
    shape.arities = t.arities;
    shape.contexts = t.contexts;

    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == nObs) {
            sections.push_back(g);
            return;
        }
        for (g[k] = 0; g[k] < t.arities[k]; ++g[k]) {
            bool ok = true;
            for (int c : readyAt[k])
                if (!t.rows[c][shape.joint_index(c, g)]) { ok = false; break; }
            if (ok) rec(k + 1);
        }
        g[k] = 0;
    };
    rec(0);
    return sections;
}

std::string to_string(HierarchyLevel level) {
    switch (level) {
        case HierarchyLevel::Noncontextual: return "Noncontextual";
        case HierarchyLevel::Probabilistic: return "Probabilistic";
        case HierarchyLevel::Logical: return "Logical";
        case HierarchyLevel::Strong: return "Strong";
    }
    return "?";
}

HierarchyVerdict classify(const EmpiricalTable& t) {
    HierarchyVerdict v;
    v.distribution = has_global_distribution(t);
    if (v.distribution.exists) {
        v.level = HierarchyLevel::Noncontextual;
        return v;
    }

    const auto support = possibilistic_collapse(t);
    v.sections = global_sections(support);
    if (v.sections.empty()) {
        v.level = HierarchyLevel::Strong;
        return v;
    }

    // Logical: some possible cell lies on no global section.
    for (std::size_t c = 0; c < support.contexts.size(); ++c) {
        for (std::size_t cell = 0; cell < support.rows[c].size(); ++cell) {
            if (!support.rows[c][cell]) continue;
            bool extendable = false;
            for (const auto& sec : v.sections) {
                if (t.joint_index(static_cast<int>(c), sec) == static_cast<int>(cell)) {
                    extendable = true;
                    break;
                }
            }
            if (!extendable) {
                v.level = HierarchyLevel::Logical;
                v.non_extendable = {static_cast<int>(c), static_cast<int>(cell)};
                return v;
            }
        }
    }
    v.level = HierarchyLevel::Probabilistic;
    return v;
}

PossibilityTable liar_cycle(int n) {
    if (n < 2) throw InvalidDimension("liar cycle needs at least 2 statements");
    PossibilityTable t;
    for (int i = 0; i < n; ++i) {
        t.observables.push_back("x" + std::to_string(i + 1));
        t.arities.push_back(2);
    }
    for (int i = 0; i < n; ++i) {
        t.contexts.push_back({i, (i + 1) % n});
        t.rows.push_back(i + 1 < n ? std::vector<int>{1, 0, 0, 1}
                                   : std::vector<int>{0, 1, 1, 0});
    }
    return t;
}

std::map<std::string, EmpiricalTable> paradox_tables() {
    std::map<std::string, EmpiricalTable> corpus;

    const std::vector<std::string> bellObs = {"A", "A'", "B", "B'"};
    const std::vector<int> bellAr = {2, 2, 2, 2};
    const std::vector<std::vector<int>> bellCtx = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};

    corpus.emplace("chsh", build_table(bellObs, bellAr, bellCtx,
                                       {{0.5, 0, 0, 0.5},
                                        {0.375, 0.125, 0.125, 0.375},
                                        {0.375, 0.125, 0.125, 0.375},
                                        {0.125, 0.375, 0.375, 0.125}}));

    corpus.emplace("hardy", build_table(bellObs, bellAr, bellCtx,
                                        {{0.04, 0.16, 0.16, 0.64},
                                         {0.0, 0.2, 0.6, 0.2},
                                         {0.0, 0.6, 0.2, 0.2},
                                         {0.2, 0.4, 0.4, 0.0}}));

    corpus.emplace("pr_box", build_table(bellObs, bellAr, bellCtx,
                                         {{0.5, 0, 0, 0.5},
                                          {0.5, 0, 0, 0.5},
                                          {0.5, 0, 0, 0.5},
                                          {0, 0.5, 0.5, 0}}));

    auto antiCycle = [](int n, const std::string& prefix) {
        std::vector<std::string> obs;
        std::vector<int> ar(n, 2);
        std::vector<std::vector<int>> ctxs;
        std::vector<std::vector<int>> sup;
        for (int i = 0; i < n; ++i) obs.push_back(prefix + std::to_string(i + 1));
        for (int i = 0; i < n; ++i) {
            ctxs.push_back({i, (i + 1) % n});
            sup.push_back({0, 1, 1, 0});
        }
        return table_from_support(obs, ar, ctxs, sup);
    };
    corpus.emplace("kcbs", antiCycle(5, "x"));
    corpus.emplace("hanging_paradox", antiCycle(5, "d")); // day-of-week statements
    corpus.emplace("overprotective_seer", antiCycle(3, "s"));

    corpus.emplace("sea_battle",
                   build_table({"H", "A", "D"}, {2, 2, 2}, {{0, 1}, {1, 2}, {2, 0}},
                               {{0.5, 0, 0, 0.5},
                                {0.5, 0, 0, 0.5},
                                {0.25, 0.25, 0.25, 0.25}}));
    return corpus;
}

std::pair<Scenario, ProbModel> to_scenario(const EmpiricalTable& t) {
    Scenario s;
    ProbModel m;
    for (std::size_t c = 0; c < t.contexts.size(); ++c) {
        std::vector<int> edge;
        for (int cell = 0; cell < t.row_size(static_cast<int>(c)); ++cell) {
            const auto outs = decode(t.contexts[c], t.arities, cell);
            std::string name = "C" + std::to_string(c) + ":";
            for (int o : outs) name += std::to_string(o);
            edge.push_back(static_cast<int>(s.vertices.size()));
            s.vertices.push_back(std::move(name));
            m.values.push_back(t.rows[c][cell]);
        }
        s.edges.push_back(std::move(edge));
    }
    m = validate_model(s, m.values);
    return {std::move(s), std::move(m)};
}

} // namespace ctx
