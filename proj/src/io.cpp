#include "ctxkit/io.hpp"

#include "ctxkit/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace ctx {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw StructureMismatch(what);
}

} // namespace

Json scenario_to_json(const Scenario& s) {
    Json j;
    j["vertices"] = s.vertices;
    Json edges = Json::array();
    for (const auto& e : s.edges) {
        Json names = Json::array();
        for (int v : e) names.push_back(s.vertices[v]);
        edges.push_back(std::move(names));
    }
    j["edges"] = std::move(edges);
    return j;
}

Scenario scenario_from_json(const Json& j) {
    require(j.is_object() && j.contains("vertices") && j.contains("edges"),
            "scenario JSON needs vertices and edges");
    std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
    std::vector<std::vector<std::string>> edges =
        j.at("edges").get<std::vector<std::vector<std::string>>>();
    return new_scenario(std::move(vertices), edges);
}

Json model_to_json(const Scenario& s, const ProbModel& p) {
    Json j;
    j["scenario"] = scenario_to_json(s);
    Json values = Json::object();
    for (std::size_t i = 0; i < s.vertices.size(); ++i)
        values[s.vertices[i]] = p.values[i];
    j["values"] = std::move(values);
    return j;
}

std::pair<Scenario, ProbModel> model_from_json(const Json& j) {
    require(j.is_object() && j.contains("scenario") && j.contains("values"),
            "model JSON needs scenario and values");
    Scenario s = scenario_from_json(j.at("scenario"));
    std::vector<double> values(s.vertices.size(), 0.0);
    for (const auto& [name, prob] : j.at("values").items()) {
        const int idx = s.index_of(name);
        require(idx >= 0, "model value for unknown vertex " + name);
        values[idx] = prob.get<double>();
    }
    return {s, validate_model(s, values)};
}

Json graph_to_json(const WeightedGraph& g) {
    Json j;
    j["n"] = g.n;
    Json edges = Json::array();
    for (const auto& [a, b] : g.edges) edges.push_back(Json::array({a, b}));
    j["edges"] = std::move(edges);
    j["weights"] = g.weights;
    return j;
}

WeightedGraph graph_from_json(const Json& j) {
    require(j.is_object() && j.contains("n") && j.contains("edges"),
            "graph JSON needs n and edges");
    const int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
        require(e.is_array() && e.size() == 2, "graph edge must be a pair");
        edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    std::vector<double> weights;
    if (j.contains("weights"))
        weights = j.at("weights").get<std::vector<double>>();
    else
        weights.assign(n, 1.0);
    return make_graph(n, std::move(edges), std::move(weights));
}

Json table_to_json(const EmpiricalTable& t) {
    Json j;
    Json obs = Json::object();
    for (std::size_t i = 0; i < t.observables.size(); ++i)
        obs[t.observables[i]] = t.arities[i];
    j["observables"] = std::move(obs);
    Json contexts = Json::array();
    for (const auto& c : t.contexts) {
        Json names = Json::array();
        for (int o : c) names.push_back(t.observables[o]);
        contexts.push_back(std::move(names));
    }
    j["contexts"] = std::move(contexts);
    j["rows"] = t.rows;
    return j;
}

EmpiricalTable table_from_json(const Json& j) {
    require(j.is_object() && j.contains("observables") && j.contains("contexts") &&
                j.contains("rows"),
            "table JSON needs observables, contexts and rows");
    std::vector<std::string> observables;
    std::vector<int> arities;
    for (const auto& [name, arity] : j.at("observables").items()) {
        observables.push_back(name);
        arities.push_back(arity.get<int>());
    }
    auto indexOf = [&](const std::string& name) {
        for (std::size_t i = 0; i < observables.size(); ++i)
            if (observables[i] == name) return static_cast<int>(i);
        throw StructureMismatch("context references unknown observable " + name);
    };
    std::vector<std::vector<int>> contexts;
    for (const auto& c : j.at("contexts")) {
        std::vector<int> ctxIdx;
        for (const auto& name : c) ctxIdx.push_back(indexOf(name.get<std::string>()));
        contexts.push_back(std::move(ctxIdx));
    }
    std::vector<std::vector<double>> rows =
        j.at("rows").get<std::vector<std::vector<double>>>();
    return build_table(std::move(observables), std::move(arities), std::move(contexts),
                       std::move(rows));
}

double round_sig(double x, int digits) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

} // namespace ctx
