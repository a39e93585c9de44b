#include "ctxkit/models.hpp"

#include "ctxkit/errors.hpp"
#include "ctxkit/graph_invariants.hpp"
#include "ctxkit/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace ctx {

bool ProbModel::deterministic(double tol) const {
    for (double v : values)
        if (std::abs(v) > tol && std::abs(v - 1.0) > tol) return false;
    return true;
}

ProbModel validate_model(const Scenario& s, const std::vector<double>& values) {
    if (values.size() != s.vertices.size())
        throw StructureMismatch("model must assign a value to every vertex");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] < -1e-12 || values[i] > 1.0 + 1e-12)
            throw OutOfRange("probability out of [0,1] at vertex " + s.vertices[i]);
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        double sum = 0.0;
        for (int v : s.edges[e]) sum += values[v];
        if (std::abs(sum - 1.0) > 1e-9)
            throw EdgeNotNormalized("edge " + std::to_string(e) + " sums to " +
                                    std::to_string(sum));
    }
    return ProbModel{values};
}

namespace {

// Backtracking over edges: pick the unique 1 per edge, propagate zeros.
void deterministic_search(const Scenario& s, long long nodeBudget, bool firstOnly,
                          std::vector<std::vector<double>>& out) {
    const std::size_t nV = s.vertices.size();
    std::vector<int> state(nV, -1); // -1 unset, 0, 1
    long long nodes = 0;

    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (firstOnly && !out.empty()) return;
        if (++nodes > nodeBudget)
            throw SearchBudgetExceeded("deterministic enumeration exceeded node budget");
        if (k == s.edges.size()) {
            std::vector<double> vals(nV, 0.0);
            for (std::size_t i = 0; i < nV; ++i) vals[i] = state[i] == 1 ? 1.0 : 0.0;
            out.push_back(std::move(vals));
            return;
        }
        const auto& e = s.edges[k];
        int one = -1;
        for (int v : e)
            if (state[v] == 1) { one = v; break; }

        auto tryChoice = [&](int chosen) {
            std::vector<std::pair<int, int>> saved;
            bool ok = true;
            for (int v : e) {
                const int want = (v == chosen) ? 1 : 0;
                if (state[v] == -1) {
                    saved.push_back({v, -1});
                    state[v] = want;
                } else if (state[v] != want) {
                    ok = false;
                    break;
                }
            }
            if (ok) rec(k + 1);
            for (auto [v, old] : saved) state[v] = old;
        };

        if (one >= 0) {
            tryChoice(one);
        } else {
            for (int v : e)
                if (state[v] != 0) tryChoice(v);
        }
    };
    rec(0);
}

} // namespace

std::vector<ProbModel> enumerate_deterministic(const Scenario& s, long long nodeBudget) {
    std::vector<std::vector<double>> raw;
    deterministic_search(s, nodeBudget, false, raw);
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    std::vector<ProbModel> out;
    out.reserve(raw.size());
    for (auto& vals : raw) out.push_back(ProbModel{std::move(vals)});
    return out;
}

std::optional<ProbModel> ks_colorable(const Scenario& s, long long nodeBudget) {
    std::vector<std::vector<double>> raw;
    deterministic_search(s, nodeBudget, true, raw);
    if (raw.empty()) return std::nullopt;
    return ProbModel{std::move(raw[0])};
}

ClassicalityCertificate is_classical(const Scenario& s, const ProbModel& p) {
    validate_model(s, p.values);
    const auto dets = enumerate_deterministic(s);
    const std::size_t nV = s.vertices.size();
    const std::size_t nD = dets.size();

    // q >= 0, sum q = 1, sum_l q_l p_l(v) = p(v).
    std::vector<std::vector<double>> A(nV + 1, std::vector<double>(nD, 0.0));
    std::vector<double> b(nV + 1, 0.0);
    for (std::size_t v = 0; v < nV; ++v) {
        for (std::size_t l = 0; l < nD; ++l) A[v][l] = dets[l].values[v];
        b[v] = p.values[v];
    }
    for (std::size_t l = 0; l < nD; ++l) A[nV][l] = 1.0;
    b[nV] = 1.0;

    auto lp = lp_feasible(A, b);
    ClassicalityCertificate cert;
    if (lp.status == LpResult::Status::Optimal) {
        cert.classical = true;
        cert.weights = lp.x;
    } else {
        cert.classical = false;
        cert.witness = lp.farkas;
    }
    return cert;
}

namespace {

std::string joint_name(const BellStructure& bell, const std::vector<int>& outs,
                       const std::vector<int>& sets) {
    if (bell.parties == 1)
        return std::to_string(outs[0]) + "|" + std::to_string(sets[0]);
    return bell_vertex_name(outs, sets);
}

} // namespace

SignalingReport is_no_signaling(const Scenario& s, const ProbModel& p,
                                const BellStructure& bell) {
    // Deliberately weaker than validate_model: the Foulis-Randall edges
    // already encode no-signaling, so a signaling model can only be
    // normalized on the product contexts (one per full setting vector).
    if (p.values.size() != s.vertices.size())
        throw StructureMismatch("model size does not match the scenario");
    for (double v : p.values)
        if (v < -1e-9 || v > 1.0 + 1e-9)
            throw OutOfRange("probability out of [0,1]");
    const int n = bell.parties, k = bell.settings, m = bell.outcomes;
    long long expected = 1;
    for (int i = 0; i < n; ++i) expected *= static_cast<long long>(k) * m;
    if (expected != static_cast<long long>(s.vertices.size()))
        throw StructureMismatch("party structure does not factor the vertex set");

    // index[settings-code][outcomes-code] -> vertex
    const auto code = [&](const std::vector<int>& digits, int base) {
        long long c = 0;
        for (int d : digits) c = c * base + d;
        return c;
    };
    const long long nSet = [&] { long long r = 1; for (int i = 0; i < n; ++i) r *= k; return r; }();
    const long long nOut = [&] { long long r = 1; for (int i = 0; i < n; ++i) r *= m; return r; }();
    std::vector<std::vector<int>> index(nSet, std::vector<int>(nOut, -1));

    std::vector<int> sets(n, 0), outs(n, 0);
    std::function<void(int)> fillSets = [&](int pos) {
        if (pos == n) {
            std::function<void(int)> fillOuts = [&](int qos) {
                if (qos == n) {
                    const int v = s.index_of(joint_name(bell, outs, sets));
                    if (v < 0)
                        throw StructureMismatch("missing joint outcome vertex " +
                                                joint_name(bell, outs, sets));
                    index[code(sets, k)][code(outs, m)] = v;
                    return;
                }
                for (outs[qos] = 0; outs[qos] < m; ++outs[qos]) fillOuts(qos + 1);
                outs[qos] = 0;
            };
            fillOuts(0);
            return;
        }
        for (sets[pos] = 0; sets[pos] < k; ++sets[pos]) fillSets(pos + 1);
        sets[pos] = 0;
    };
    fillSets(0);

    // Each full setting vector is a complete measurement; those rows must
    // normalize even when the one-way protocol edges do not.
    for (long long sc = 0; sc < nSet; ++sc) {
        double sum = 0.0;
        for (long long oc = 0; oc < nOut; ++oc) sum += p.values[index[sc][oc]];
        if (std::abs(sum - 1.0) > 1e-9)
            throw EdgeNotNormalized("setting context " + std::to_string(sc) +
                                    " sums to " + std::to_string(sum));
    }

    // Marginal of party `i` under full setting vector `sets`.
    auto marginal = [&](int party, int outcome, const std::vector<int>& fullSets) {
        double total = 0.0;
        const long long sc = code(fullSets, k);
        std::vector<int> o(n, 0);
        std::function<void(int)> sum = [&](int pos) {
            if (pos == n) {
                total += p.values[index[sc][code(o, m)]];
                return;
            }
            if (pos == party) {
                o[pos] = outcome;
                sum(pos + 1);
            } else {
                for (o[pos] = 0; o[pos] < m; ++o[pos]) sum(pos + 1);
                o[pos] = 0;
            }
        };
        sum(0);
        return total;
    };

    SignalingReport rep;
    std::vector<int> x(n, 0);
    for (int party = 0; party < n; ++party) {
        for (int xi = 0; xi < k; ++xi) {
            std::vector<int> ref(n, 0);
            ref[party] = xi;
            std::vector<double> base(m);
            for (int a = 0; a < m; ++a) base[a] = marginal(party, a, ref);

            std::fill(x.begin(), x.end(), 0);
            x[party] = xi;
            std::function<bool(int)> sweep = [&](int pos) -> bool {
                if (pos == n) {
                    for (int a = 0; a < m; ++a) {
                        const double got = marginal(party, a, x);
                        if (std::abs(got - base[a]) > 1e-9) {
                            rep.no_signaling = false;
                            rep.witness = "party " + std::to_string(party) + " marginal p(" +
                                          std::to_string(a) + "|x=" + std::to_string(xi) +
                                          ") depends on the other parties' settings (" +
                                          std::to_string(base[a]) + " vs " +
                                          std::to_string(got) + ")";
                            return true;
                        }
                    }
                    return false;
                }
                if (pos == party) return sweep(pos + 1);
                for (x[pos] = 0; x[pos] < k; ++x[pos])
                    if (sweep(pos + 1)) return true;
                x[pos] = 0;
                return false;
            };
            if (sweep(0)) return rep;
        }
    }
    return rep;
}

ExclusivityReport satisfies_consistent_exclusivity(const Scenario& s, const ProbModel& p) {
    validate_model(s, p.values);
    const auto no = non_orthogonality_graph(s);
    std::vector<std::pair<int, int>> edges;
    const int n = static_cast<int>(s.vertices.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (no.adj[i][j]) edges.push_back({i, j});
    auto g = make_graph(n, std::move(edges), p.values);
    auto alpha = independence_number(g);

    ExclusivityReport rep;
    rep.worst_set = alpha.witness;
    rep.worst_total = alpha.value;
    rep.satisfied = alpha.value <= 1.0 + 1e-9;
    return rep;
}

} // namespace ctx
