#ifndef CTXKIT_IO_HPP
#define CTXKIT_IO_HPP

#include "ctxkit/graph_invariants.hpp"
#include "ctxkit/models.hpp"
#include "ctxkit/scenario.hpp"
#include "ctxkit/sheaf.hpp"

#include <json.hpp>

#include <string>

namespace ctx {

// Insertion-ordered JSON keeps field order stable across round trips and
// preserves the observable order of empirical tables.
using Json = nlohmann::ordered_json;

// {"vertices": [...], "edges": [[names...], ...]}
Json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const Json& j);

// {"scenario": <scenario>, "values": {"vertex": prob}}
Json model_to_json(const Scenario& s, const ProbModel& p);
std::pair<Scenario, ProbModel> model_from_json(const Json& j);

// {"n": int, "edges": [[i,j],...], "weights": [...]}
Json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const Json& j);

// {"observables": {"name": arity}, "contexts": [["name",...]], "rows": [[p,...]]}
Json table_to_json(const EmpiricalTable& t);
EmpiricalTable table_from_json(const Json& j);

// Rounds every number in a report to 12 significant digits so golden files
// stay byte-stable across platforms.
double round_sig(double x, int digits = 12);

} // namespace ctx

#endif
