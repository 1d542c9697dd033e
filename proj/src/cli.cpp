#include "msdecomp/cli.hpp"

#include "msdecomp/errors.hpp"
#include "msdecomp/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace msd {

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kSchemaOrIo = 1;
constexpr int kRejected = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw schema_error("cannot read file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw schema_error("failed while reading file '" + path + "'");
    return buffer.str();
}

/// Machine and human forms of one command outcome, derived from the same
/// internal values.
struct CommandResult {
    int code = kOk;
    json machine;
    std::string text;
};

std::string describe_piece(const PolarPiece& piece) {
    if (piece.is_sphere()) return piece.id + ": S^n";
    std::string dims;
    for (std::size_t i = 0; i < piece.saddle_inventory.size(); ++i) {
        if (i > 0) dims += ", ";
        dims += std::to_string(piece.saddle_inventory[i]);
    }
    return piece.id + ": saddle points with unstable dims [" + dims + "]";
}

void render_expr_lines(std::ostream& out, const ConnectedSumExpr& expr) {
    out << "g = " << expr.g << "  l = " << expr.l() << "\n";
    if (!expr.pieces.empty()) {
        out << "pieces (k = " << expr.pieces.size() << "):\n";
        for (const auto& piece : expr.pieces) out << "  " << describe_piece(piece) << "\n";
    }
    for (const auto& claim : expr.claims)
        out << "claim: " << claim.text << " [" << claim.rule << "]\n";
}

CommandResult cmd_validate(const std::string& path) {
    const Scenario scenario = parse_scenario(read_file(path));
    const ValidationReport report = validate_portrait(scenario.portrait);

    CommandResult result;
    result.code = report.admissible() ? kOk : kRejected;
    result.machine = {{"command", "validate"}, {"report", to_json(report)}};

    std::ostringstream text;
    text << "admissible: " << (report.admissible() ? "yes" : "no") << "\n";
    for (const auto& violation : report.violations)
        text << "  [" << violation.code << "] " << violation.message << "\n";
    result.text = text.str();
    return result;
}

PortraitGraph resolve_graph(const Scenario& scenario, bool generic) {
    if (scenario.graph.has_value()) return *scenario.graph;
    if (generic) return generic_graph(scenario.portrait);
    throw hypothesis_error(
        "the scenario has no graph section; supply one or pass --generic-graph");
}

CommandResult cmd_decompose(const std::string& path, bool generic) {
    const Scenario scenario = parse_scenario(read_file(path));
    const PortraitGraph graph = resolve_graph(scenario, generic);
    Decomposition dec = decompose(scenario.portrait, graph);
    const OrbitCounts counts = orbit_counts(scenario.portrait);
    const bool used_generic = generic && !scenario.graph.has_value();
    if (used_generic)
        dec.expr.claims.push_back(
            {"piece structure comes from one representative graph consistent with the counts, "
             "not from dynamical data",
             "generic-graph"});

    CommandResult result;
    result.machine = {{"command", "decompose"},
                      {"counts", to_json(counts)},
                      {"generic_graph", used_generic},
                      {"decomposition", to_json(dec)}};

    std::ostringstream text;
    text << "M = " << dec.expr.to_string() << "\n";
    render_expr_lines(text, dec.expr);
    if (!dec.cuts.empty()) {
        text << "cuts:\n";
        for (const auto& record : dec.cuts)
            text << "  " << record.saddle_id << ": "
                 << (record.splitting ? "splitting" : "non-splitting")
                 << ", components after = " << record.component_count_after << "\n";
    }
    result.text = text.str();
    return result;
}

CommandResult cmd_analyze(const std::string& path) {
    const Scenario scenario = parse_scenario(read_file(path));
    const ProjectiveReport report = analyze_single_saddle(scenario.portrait);

    CommandResult result;
    result.code = report.admissible ? kOk : kRejected;
    result.machine = {{"command", "analyze"}, {"report", to_json(report)}};

    std::ostringstream text;
    if (report.admissible) {
        text << "single-saddle analysis: accepted (n = " << report.n << ", k = " << report.k
             << ")\n";
        text << "M = " << report.decomposition.to_string() << "\n";
        for (const auto& claim : report.structure_claims)
            text << "claim: " << claim.text << " [" << claim.rule << "]\n";
    } else {
        text << "single-saddle analysis: rejected\n";
        for (const auto& reason : report.rejection_reasons) text << "  - " << reason << "\n";
    }
    result.text = text.str();
    return result;
}

CommandResult cmd_realize(int n, int nu, int mu) {
    const RealizationPlan plan = plan_realization(n, nu, mu);
    const bool round_trip = verify_round_trip(n, nu, mu);

    CommandResult result;
    result.code = round_trip ? kOk : kRejected;
    result.machine = {{"command", "realize"}, {"plan", to_json(plan)}, {"round_trip", round_trip}};

    std::ostringstream text;
    text << "plan: n = " << plan.n << ", nu = " << plan.nu << ", mu = " << plan.mu
         << ", g = " << plan.g << "\n";
    int index = 0;
    for (const auto& step : plan.steps) {
        const json j = to_json(step);
        text << "  " << ++index << ". " << j.at("step").get<std::string>();
        if (j.contains("kind")) text << " " << j.at("kind").get<std::string>();
        if (j.contains("count")) text << " (count " << j.at("count").get<int>() << ")";
        if (j.contains("boundary")) text << ", boundary " << j.at("boundary").get<std::string>();
        if (j.contains("boundary_a"))
            text << " " << j.at("boundary_a").get<std::string>() << " ~ "
                 << j.at("boundary_b").get<std::string>();
        if (j.contains("source_id"))
            text << " source " << j.at("source_id").get<std::string>() << ", sink "
                 << j.at("sink_id").get<std::string>();
        text << "\n";
    }
    text << "expected: " << plan.expected_manifold.to_string() << "\n";
    text << "round trip: " << (round_trip ? "ok" : "FAILED") << "\n";
    result.text = text.str();
    return result;
}

CommandResult cmd_check(const std::string& path) {
    const Scenario scenario = parse_scenario(read_file(path));
    const OrbitPortrait& portrait = scenario.portrait;
    const ValidationReport validation = validate_portrait(portrait);

    CommandResult result;
    result.machine = {{"command", "check"}, {"validation", to_json(validation)}};
    std::ostringstream text;
    text << "admissible: " << (validation.admissible() ? "yes" : "no") << "\n";
    for (const auto& violation : validation.violations)
        text << "  [" << violation.code << "] " << violation.message << "\n";

    bool ok = validation.admissible();
    if (ok) {
        const OrbitCounts counts = orbit_counts(portrait);
        const GenusResult gen = genus(counts.mu, counts.nu);
        result.machine["counts"] = to_json(counts);
        result.machine["genus"] = to_json(gen);
        text << "counts: mu = " << counts.mu << ", nu = " << counts.nu
             << ", other saddles = " << counts.other_saddles << "\n";
        if (!gen.parity_ok) {
            text << "genus: mu + nu is odd; no closed manifold supports these counts\n";
            ok = false;
        } else if (gen.g < 0) {
            text << "genus: g = " << gen.g << " < 0; no closed manifold supports these counts\n";
            ok = false;
        } else {
            text << "genus: g = " << gen.g << ", k = " << gen.k << "\n";
        }

        const std::vector<int> counts_vector = morse_counts(portrait);
        result.machine["morse_counts"] = counts_vector;
        if (portrait.betti.has_value()) {
            const MorseReport morse = check_morse_inequalities(counts_vector, *portrait.betti);
            result.machine["morse"] = to_json(morse);
            if (morse.all_pass()) {
                text << "morse: all inequalities hold, alternating sums agree\n";
            } else {
                text << "morse: FAILED (";
                bool first = true;
                for (std::size_t m = 0; m < morse.inequality_verdicts.size(); ++m)
                    if (!morse.inequality_verdicts[m]) {
                        if (!first) text << ", ";
                        text << "inequality " << m;
                        first = false;
                    }
                if (!morse.euler_ok) {
                    if (!first) text << ", ";
                    text << "alternating-sum identity";
                }
                text << ")\n";
                ok = false;
            }
        }

        if (gen.parity_ok && gen.g >= 1) {
            if (portrait.system_kind == SystemKind::Diffeomorphism &&
                portrait.orientable.value_or(false)) {
                const Conclusion conclusion = corollary_heteroclinic(gen.g, portrait.pi1_free_rank);
                result.machine["heteroclinic"] = to_json(conclusion);
                text << "heteroclinic: " << to_json(conclusion).at("verdict").get<std::string>()
                     << " — " << conclusion.statement << "\n";
            }
            if (portrait.system_kind == SystemKind::GradientLikeFlow && portrait.edges.empty() &&
                portrait.orientable.value_or(false)) {
                const Conclusion conclusion =
                    corollary_periodic_trajectory(gen.g, portrait.pi1_free_rank);
                result.machine["periodic_trajectory"] = to_json(conclusion);
                text << "periodic trajectory: "
                     << to_json(conclusion).at("verdict").get<std::string>() << " — "
                     << conclusion.statement << "\n";
            }
        }
    }

    result.code = ok ? kOk : kRejected;
    result.text = text.str();
    return result;
}

CommandResult cmd_oracle(const std::string& path, bool generic) {
    const Scenario scenario = parse_scenario(read_file(path));
    const PortraitGraph graph = resolve_graph(scenario, generic);
    const std::vector<ConnectedSumExpr> outcomes =
        brute_force_decompose(scenario.portrait, graph);
    const bool invariant = outcomes.size() == 1;

    CommandResult result;
    result.code = invariant ? kOk : kRejected;
    json outcome_json = json::array();
    for (const auto& expr : outcomes) outcome_json.push_back(to_json(expr));
    result.machine = {{"command", "oracle"},
                      {"order_invariant", invariant},
                      {"distinct_outcomes", outcomes.size()},
                      {"outcomes", std::move(outcome_json)}};

    std::ostringstream text;
    text << "order-invariant: " << (invariant ? "yes" : "NO") << "\n";
    text << "distinct outcomes: " << outcomes.size() << "\n";
    for (const auto& expr : outcomes) text << "M = " << expr.to_string() << "\n";
    result.text = text.str();
    return result;
}

void print_result(const CommandResult& result, bool as_json, std::ostream& out) {
    if (as_json) {
        json machine = result.machine;
        machine["exit_code"] = result.code;
        machine["status"] = result.code == kOk ? "ok" : "rejected";
        out << machine.dump(2) << "\n";
    } else {
        out << result.text;
    }
}

int print_error(bool as_json, const char* kind, const std::string& message, int code,
                std::ostream& out, std::ostream& err) {
    if (as_json) {
        const json machine = {{"status", "error"},
                              {"exit_code", code},
                              {"error", {{"kind", kind}, {"message", message}}}};
        out << machine.dump(2) << "\n";
    } else {
        err << "error (" << kind << "): " << message << "\n";
    }
    return code;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Combinatorial engine for Morse-Smale orbit data: validates portraits, "
                 "computes connected-sum decompositions, and plans realizations."};
    app.require_subcommand(1);
    app.fallthrough();

    bool as_json = false;
    app.add_flag("--json", as_json, "emit the machine-readable report");

    std::string scenario_path;
    bool generic = false;

    auto* validate_cmd =
        app.add_subcommand("validate", "check a scenario against every portrait invariant");
    validate_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();

    auto* decompose_cmd =
        app.add_subcommand("decompose", "cut along every codimension-one separatrix");
    decompose_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
    decompose_cmd->add_flag("--generic-graph", generic,
                            "derive a representative graph from the counts when the scenario "
                            "has none");

    auto* analyze_cmd = app.add_subcommand("analyze", "single-saddle (projective-like) analysis");
    analyze_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();

    int n = 0, nu = 0, mu = 0;
    auto* realize_cmd = app.add_subcommand("realize", "plan a system with the given counts");
    realize_cmd->add_option("--n", n, "manifold dimension (>= 3)")->required();
    realize_cmd->add_option("--nu", nu, "codimension-one saddle points")->required();
    realize_cmd->add_option("--mu", mu, "node points (>= 2)")->required();

    auto* check_cmd =
        app.add_subcommand("check", "counts, genus, Morse inequalities and corollaries");
    check_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();

    auto* oracle_cmd =
        app.add_subcommand("oracle", "cut-order invariance check by exhaustive enumeration");
    oracle_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
    oracle_cmd->add_flag("--generic-graph", generic,
                         "derive a representative graph from the counts");

    std::vector<const char*> argv;
    argv.push_back("msdecomp");
    for (const auto& arg : args) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        // Flag may not have been parsed; honor a literal --json in the raw args.
        const bool raw_json =
            std::find(args.begin(), args.end(), "--json") != args.end() || as_json;
        return print_error(raw_json, "usage", e.what(), kSchemaOrIo, out, err);
    }

    try {
        CommandResult result;
        if (*validate_cmd)
            result = cmd_validate(scenario_path);
        else if (*decompose_cmd)
            result = cmd_decompose(scenario_path, generic);
        else if (*analyze_cmd)
            result = cmd_analyze(scenario_path);
        else if (*realize_cmd)
            result = cmd_realize(n, nu, mu);
        else if (*check_cmd)
            result = cmd_check(scenario_path);
        else
            result = cmd_oracle(scenario_path, generic);
        print_result(result, as_json, out);
        return result.code;
    } catch (const schema_error& e) {
        return print_error(as_json, "schema", e.what(), kSchemaOrIo, out, err);
    } catch (const precondition_error& e) {
        return print_error(as_json, "precondition", e.what(), kRejected, out, err);
    } catch (const hypothesis_error& e) {
        return print_error(as_json, "hypothesis", e.what(), kRejected, out, err);
    } catch (const std::exception& e) {
        return print_error(as_json, "internal", e.what(), kSchemaOrIo, out, err);
    }
}

} // namespace msd
