// ctxkit: deterministic command-line front end emitting JSON reports.
#include "ctxkit/errors.hpp"
#include "ctxkit/graph_invariants.hpp"
#include "ctxkit/io.hpp"
#include "ctxkit/models.hpp"
#include "ctxkit/ontomodels.hpp"
#include "ctxkit/pps_weak.hpp"
#include "ctxkit/quantum_kernel.hpp"
#include "ctxkit/scenario.hpp"
#include "ctxkit/sheaf.hpp"
#include "ctxkit/simplex.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr const char* kVersion = "1.0.0";

#ifndef CTXKIT_DATA_DIR
#define CTXKIT_DATA_DIR "data"
#endif

using ctx::Json;

// Exit codes: 0 success, 2 parse, 3 validation, 4 unknown resource, 5 solver.
enum ExitCode { kOk = 0, kParse = 2, kValidation = 3, kUnknown = 4, kSolver = 5 };

void round_numbers(Json& j) {
    if (j.is_number_float())
        j = ctx::round_sig(j.get<double>());
    else if (j.is_array() || j.is_object())
        for (auto& child : j) round_numbers(child);
}

Json base_report(const std::string& command, std::uint64_t seed) {
    Json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["seed"] = seed;
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ctx::UnknownName("cannot open file: " + path);
    return Json::parse(in); // parse_error propagates -> exit 2
}

std::string rational_str(const ctx::Rational& r) {
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

// --- presets -----------------------------------------------------------------

ctx::EmpiricalTable table_preset(const std::string& name) {
    if (name == "liar4") return table_of(ctx::liar_cycle(4));
    auto corpus = ctx::paradox_tables();
    const auto it = corpus.find(name);
    if (it == corpus.end()) throw ctx::UnknownName("unknown table preset: " + name);
    return it->second;
}

ctx::WeightedGraph graph_preset(const std::string& name) {
    if (name == "c5") {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < 5; ++i) edges.push_back({i, (i + 1) % 5});
        return ctx::make_graph(5, std::move(edges), std::vector<double>(5, 1.0));
    }
    if (name == "chsh") {
        // Exclusivity graph of the eight winning events (ab|xy) with
        // a xor b = x and y; events exclusive when a shared setting forces
        // different outcomes for that party.
        struct Event { int a, b, x, y; };
        std::vector<Event> events;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        if ((a ^ b) == (x & y)) events.push_back({a, b, x, y});
        std::vector<std::pair<int, int>> edges;
        for (std::size_t i = 0; i < events.size(); ++i)
            for (std::size_t j = i + 1; j < events.size(); ++j) {
                const auto& u = events[i];
                const auto& v = events[j];
                if ((u.x == v.x && u.a != v.a) || (u.y == v.y && u.b != v.b))
                    edges.push_back({static_cast<int>(i), static_cast<int>(j)});
            }
        return ctx::make_graph(static_cast<int>(events.size()), std::move(edges),
                               std::vector<double>(events.size(), 1.0));
    }
    throw ctx::UnknownName("unknown graph preset: " + name);
}

ctx::Scenario cabello18_scenario() {
    const auto vectors =
        ctx::load_vectors(std::string(CTXKIT_DATA_DIR) + "/cabello18.txt", 4);
    return ctx::cabello18(vectors).scenario;
}

// --- subcommands --------------------------------------------------------------

Json cmd_classify(const std::string& preset, const std::string& file,
                  std::uint64_t seed) {
    ctx::EmpiricalTable t =
        preset.empty() ? ctx::table_from_json(load_json_file(file)) : table_preset(preset);
    Json j = base_report("classify", seed);
    j["input"] = preset.empty() ? file : "preset:" + preset;
    j["tolerances"] = {{"row_normalization", 1e-9}, {"marginal_agreement", 1e-9}};

    const auto verdict = ctx::classify(t);
    j["level"] = ctx::to_string(verdict.level);
    j["global_sections"] = verdict.sections.size();
    if (verdict.level == ctx::HierarchyLevel::Noncontextual)
        j["distribution_weights"] = verdict.distribution.weights;
    if (verdict.level == ctx::HierarchyLevel::Logical) {
        Json w;
        w["context"] = verdict.non_extendable.first;
        w["joint_outcome"] = verdict.non_extendable.second;
        j["non_extendable_cell"] = std::move(w);
    }
    return j;
}

Json cmd_invariants(const std::string& preset, const std::string& file,
                    std::uint64_t seed) {
    ctx::WeightedGraph g =
        preset.empty() ? ctx::graph_from_json(load_json_file(file)) : graph_preset(preset);
    Json j = base_report("invariants", seed);
    j["input"] = preset.empty() ? file : "preset:" + preset;
    j["tolerances"] = {{"theta_accuracy", 1e-7}};
    const auto rep = ctx::csw_report(g);
    j["alpha"] = rep.alpha;
    j["alpha_witness"] = rep.alpha_witness;
    j["theta"] = rep.theta;
    return j;
}

Json cmd_inequality(const std::string& preset, std::uint64_t seed) {
    Json j = base_report("inequality", seed);
    j["input"] = "preset:" + preset;
    if (preset == "kcbs") {
        const auto r = ctx::kcbs_realization();
        j["sum_projector_expectations"] = r.beta;
        j["classical_bound"] = 2.0; // independence number of the pentagon
        j["correlation_sum"] = r.alpha_corr;
        j["classical_correlation_bound"] = -3.0;
        j["violated"] = r.beta > 2.0 && r.alpha_corr < -3.0;
        return j;
    }
    if (preset == "chsh") {
        const auto t = ctx::paradox_tables().at("chsh");
        // Winning-event total: P(a = b) on the first three contexts,
        // P(a != b) on the last.
        double sum = 0.0;
        for (int c = 0; c < 3; ++c) sum += t.rows[c][0] + t.rows[c][3];
        sum += t.rows[3][1] + t.rows[3][2];
        j["chsh_sum"] = sum;
        j["classical_bound"] = 3.0;
        j["violated"] = sum > 3.0;
        j["global_distribution_exists"] = ctx::has_global_distribution(t).exists;
        return j;
    }
    if (preset == "mermin_peres") {
        const auto sq = ctx::mermin_peres_square();
        ctx::Op rho = ctx::Op::Identity(4, 4) / 4.0;
        j["chi"] = sq.chi(rho);
        j["classical_bound"] = 4.0;
        j["violated"] = sq.chi(rho) > 4.0;
        return j;
    }
    throw ctx::UnknownName("unknown inequality preset: " + preset);
}

Json paradox_common(const ctx::PPSExperiment& e) {
    Json j;
    Json abl = Json::object();
    for (const auto& [name, pvm] : e.measurements) {
        Json row = Json::array();
        for (std::size_t k = 0; k < pvm.size(); ++k)
            row.push_back(ctx::abl_probability(e, name, k));
        abl[name] = std::move(row);
    }
    j["abl"] = std::move(abl);

    Json weak = Json::object();
    for (const auto& [name, pvm] : e.measurements) {
        Json row = Json::array();
        for (const auto& p : pvm) row.push_back(ctx::weak_value(p, e.pre, e.post));
        weak[name] = std::move(row);
    }
    j["weak_values"] = std::move(weak);

    std::vector<ctx::Op> family;
    for (const auto& [name, pvm] : e.measurements)
        if (pvm.size() == 2) family.push_back(pvm[0]); // binary yes/no questions
    const auto conditions = ctx::algebraic_conditions(ctx::abl_closure(e, family));
    Json cond;
    cond["range_ok"] = conditions.range_ok;
    cond["boundary_ok"] = conditions.boundary_ok;
    cond["additivity_ok"] = conditions.additivity_ok;
    cond["violation"] = conditions.violation;
    j["algebraic_conditions"] = std::move(cond);

    const auto verdict = ctx::is_logical_pps_paradox(e, family);
    j["logical_paradox"] = verdict.logical;
    j["violated_condition"] = verdict.violated;
    return j;
}

Json cmd_paradox(std::string name, bool toy, std::uint64_t seed) {
    if (name == "three-box") name = "three_box";
    const auto gallery = ctx::paradox_gallery();
    const auto it = gallery.find(name);
    if (it == gallery.end()) throw ctx::UnknownName("unknown paradox: " + name);

    Json j = base_report("paradox", seed);
    j["input"] = name;
    j["tolerances"] = {{"abl", 1e-9}, {"weak_value", 1e-9}};
    j.update(paradox_common(it->second));

    if (name == "cheshire") {
        // Fine-grained values: the two path-and-polarization cells carry ABL
        // 1/4 each while their union (the bare path question) carries 0.
        const auto& e = it->second;
        const auto& fine = e.measurements.at("path_spin");
        const auto& path = e.measurements.at("path");
        std::vector<std::pair<ctx::Op, double>> f;
        f.push_back({fine[2], ctx::abl_probability(e, "path_spin", 2)});
        f.push_back({fine[3], ctx::abl_probability(e, "path_spin", 3)});
        f.push_back({path[1], ctx::abl_probability(e, "path", 1)});
        f.push_back({ctx::Op::Zero(4, 4), 0.0});
        const auto fineCond = ctx::algebraic_conditions(f);
        Json c;
        c["range_ok"] = fineCond.range_ok;
        c["boundary_ok"] = fineCond.boundary_ok;
        c["additivity_ok"] = fineCond.additivity_ok;
        c["violation"] = fineCond.violation;
        j["fine_grained_conditions"] = std::move(c);
    }
    if (name == "pigeonhole") {
        const auto sq = ctx::three_qubit_square();
        Json forced = Json::object();
        for (int c = 0; c < 3; ++c) forced[sq.labels[c]] = sq.forced_values[c];
        j["forced_values"] = std::move(forced);
        j["contradiction"] = sq.contradiction;
    }
    if (toy) {
        if (name != "cheshire")
            throw ctx::UnknownName("no toy-model reproduction for " + name);
        const auto rep = ctx::toy_cheshire();
        Json t;
        t["p_right_path"] = rational_str(rep.p_right_path);
        t["p_right_spin_plus"] = rational_str(rep.p_right_spin_plus);
        t["p_right_spin_minus"] = rational_str(rep.p_right_spin_minus);
        t["post_selection_prob"] = rational_str(rep.post_selection_prob);
        j["toy_reproduction"] = std::move(t);
    }
    return j;
}

Json cmd_ncbound(const std::string& resource, const std::string& vectorFile,
                 std::uint64_t seed) {
    if (resource != "cabello18")
        throw ctx::UnknownName("unknown noncontextuality bound: " + resource);
    const std::string path =
        vectorFile.empty() ? std::string(CTXKIT_DATA_DIR) + "/cabello18.txt" : vectorFile;
    const auto vectors = ctx::load_vectors(path, 4);
    const auto realization = ctx::cabello18(vectors);
    const auto result = ctx::kunjwal_spekkens_bound(realization.scenario, &vectors);

    Json j = base_report("ncbound", seed);
    j["input"] = resource;
    j["vectors"] = path;
    j["tolerances"] = {{"lp", 1e-9}};
    j["nc_bound"] = result.nc_bound;
    j["example_assignment_value"] = result.example_assignment_value;
    j["quantum_value"] = result.quantum_value;
    j["ks_colorable"] =
        ctx::ks_colorable(realization.scenario).has_value();
    return j;
}

Json cmd_toy(const std::string& action, std::uint64_t seed) {
    if (action != "demo") throw ctx::UnknownName("unknown toy action: " + action);
    Json j = base_report("toy", seed);

    const std::array<ctx::ToyMeas, 3> meas = {ctx::ToyMeas::X, ctx::ToyMeas::Y,
                                              ctx::ToyMeas::Z};
    const std::array<std::string, 3> names = {"X", "Y", "Z"};
    Json table = Json::object();
    for (int m = 0; m < 3; ++m) {
        for (int sign = 0; sign < 2; ++sign) {
            const auto state = sign ? ctx::toy_state_minus(meas[m])
                                    : ctx::toy_state_plus(meas[m]);
            Json row = Json::object();
            for (int q = 0; q < 3; ++q) {
                const auto dist = ctx::toy_predict(state, meas[q]);
                row[names[q]] =
                    Json::array({rational_str(dist[0]), rational_str(dist[1])});
            }
            table[(sign ? "-" : "+") + names[m]] = std::move(row);
        }
    }
    j["prediction_table"] = std::move(table);

    // Seeded measurement run: measure X, repeat X (same outcome), then Z.
    ctx::ToyState state = ctx::toy_state_mixed();
    Json run = Json::array();
    const auto [o1, s1] = ctx::toy_measure(state, ctx::ToyMeas::X, seed);
    const auto [o2, s2] = ctx::toy_measure(s1, ctx::ToyMeas::X, seed + 1);
    const auto [o3, s3] = ctx::toy_measure(s2, ctx::ToyMeas::Z, seed + 2);
    run.push_back(Json{{"measure", "X"}, {"outcome", o1}});
    run.push_back(Json{{"measure", "X"}, {"outcome", o2}, {"repeatable", o1 == o2}});
    run.push_back(Json{{"measure", "Z"}, {"outcome", o3}});
    j["run"] = std::move(run);

    const auto rep = ctx::toy_cheshire();
    Json cheshire;
    cheshire["p_right_path"] = rational_str(rep.p_right_path);
    cheshire["p_right_spin_plus"] = rational_str(rep.p_right_spin_plus);
    cheshire["p_right_spin_minus"] = rational_str(rep.p_right_spin_minus);
    j["cheshire"] = std::move(cheshire);
    return j;
}

Json cmd_scenario(const std::string& preset, std::uint64_t seed) {
    Json j = base_report("scenario", seed);
    j["input"] = "preset:" + preset;
    ctx::Scenario s;
    if (preset == "bell222")
        s = ctx::bell_scenario(2, 2, 2);
    else if (preset == "bell233")
        s = ctx::bell_scenario(2, 3, 3);
    else if (preset == "cabello18")
        s = cabello18_scenario();
    else
        throw ctx::UnknownName("unknown scenario preset: " + preset);
    j["scenario"] = ctx::scenario_to_json(s);
    j["vertex_count"] = s.vertices.size();
    j["edge_count"] = s.edges.size();
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"contextuality toolkit"};
    app.require_subcommand(1);

    std::string preset, file, vectors, name = "demo";
    std::uint64_t seed = 0;
    bool compact = false, toy = false, weak = false;

    auto addCommon = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "deterministic seed echoed in the report");
        sub->add_flag("--json", compact, "compact single-line JSON output");
    };

    auto* classify = app.add_subcommand("classify", "empirical-table hierarchy level");
    classify->add_option("--preset", preset, "built-in table name");
    classify->add_option("file", file, "table JSON file");
    addCommon(classify);

    auto* invariants = app.add_subcommand("invariants", "alpha and theta of a graph");
    invariants->add_option("--preset", preset, "built-in graph name");
    invariants->add_option("file", file, "graph JSON file");
    addCommon(invariants);

    auto* inequality = app.add_subcommand("inequality", "noncontextuality inequality report");
    inequality->add_option("--preset", preset, "kcbs, chsh, or mermin_peres")->required();
    addCommon(inequality);

    auto* paradox = app.add_subcommand("paradox", "pre/post-selection paradox report");
    paradox->add_option("name", name, "three_box, cheshire, or pigeonhole")->required();
    paradox->add_flag("--toy", toy, "include the toy-model reproduction");
    paradox->add_flag("--weak", weak, "weak values are always included");
    addCommon(paradox);

    auto* ncbound = app.add_subcommand("ncbound", "noncontextuality bound of an inequality");
    ncbound->add_option("name", name, "resource name (cabello18)")->required();
    ncbound->add_option("--vectors", vectors, "vector data file");
    addCommon(ncbound);

    auto* toyCmd = app.add_subcommand("toy", "toy-bit model demo");
    toyCmd->add_option("action", name, "demo")->required();
    addCommon(toyCmd);

    auto* scenario = app.add_subcommand("scenario", "emit a built-in scenario as JSON");
    scenario->add_option("--preset", preset, "bell222, bell233, or cabello18")->required();
    addCommon(scenario);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kParse;
    }

    try {
        Json report;
        if (classify->parsed()) {
            if (preset.empty() && file.empty())
                throw ctx::UnknownName("classify needs a file or --preset");
            report = cmd_classify(preset, file, seed);
        } else if (invariants->parsed()) {
            if (preset.empty() && file.empty())
                throw ctx::UnknownName("invariants needs a file or --preset");
            report = cmd_invariants(preset, file, seed);
        } else if (inequality->parsed()) {
            report = cmd_inequality(preset, seed);
        } else if (paradox->parsed()) {
            report = cmd_paradox(name, toy, seed);
        } else if (ncbound->parsed()) {
            report = cmd_ncbound(name, vectors, seed);
        } else if (toyCmd->parsed()) {
            report = cmd_toy(name, seed);
        } else if (scenario->parsed()) {
            report = cmd_scenario(preset, seed);
        }
        round_numbers(report);
        std::cout << (compact ? report.dump() : report.dump(2)) << "\n";
        return kOk;
    } catch (const Json::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const ctx::UnknownName& e) {
        std::cerr << "unknown resource: " << e.what() << "\n";
        return kUnknown;
    } catch (const ctx::SolverDidNotConverge& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kSolver;
    } catch (const ctx::SearchBudgetExceeded& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kSolver;
    } catch (const ctx::Error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    }
}
