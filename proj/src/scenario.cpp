#include "msdecomp/scenario.hpp"

#include "msdecomp/errors.hpp"

#include <algorithm>
#include <sstream>

namespace msd {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw schema_error(path + ": " + what);
}

void require_object(const json& value, const std::string& path) {
    if (!value.is_object()) fail(path, "expected an object");
}

/// Strict field access: unknown keys are rejected, required keys must exist.
class Fields {
public:
    Fields(const json& obj, std::string path, std::vector<std::string> allowed)
        : obj_(obj), path_(std::move(path)) {
        for (const auto& item : obj.items())
            if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
                fail(path_, "unknown field '" + item.key() + "'");
    }

    const json& require(const std::string& key) const {
        auto it = obj_.find(key);
        if (it == obj_.end()) fail(path_, "missing required field '" + key + "'");
        return *it;
    }

    const json* optional(const std::string& key) const {
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    const std::string& path() const { return path_; }

private:
    const json& obj_;
    std::string path_;
};

int as_int(const json& value, const std::string& path, int min, int max) {
    if (!value.is_number_integer())
        fail(path, "expected an integer");
    const auto raw = value.get<long long>();
    if (raw < min || raw > max)
        fail(path, "value " + std::to_string(raw) + " outside [" + std::to_string(min) + ", " +
                       std::to_string(max) + "]");
    return static_cast<int>(raw);
}

std::string as_string(const json& value, const std::string& path) {
    if (!value.is_string()) fail(path, "expected a string");
    return value.get<std::string>();
}

bool as_bool(const json& value, const std::string& path) {
    if (!value.is_boolean()) fail(path, "expected a boolean");
    return value.get<bool>();
}

const json& as_array(const json& value, const std::string& path) {
    if (!value.is_array()) fail(path, "expected an array");
    return value;
}

PeriodicOrbit parse_orbit(const json& value, const std::string& path, int dimension) {
    require_object(value, path);
    Fields fields(value, path, {"id", "kind", "unstable_dim", "period"});
    PeriodicOrbit orbit;
    orbit.id = as_string(fields.require("id"), path + ".id");
    const std::string kind = as_string(fields.require("kind"), path + ".kind");
    if (kind == "sink")
        orbit.kind = OrbitKind::Sink;
    else if (kind == "source")
        orbit.kind = OrbitKind::Source;
    else if (kind == "saddle")
        orbit.kind = OrbitKind::Saddle;
    else
        fail(path + ".kind", "expected \"sink\", \"source\" or \"saddle\", got \"" + kind + "\"");
    orbit.unstable_dim =
        as_int(fields.require("unstable_dim"), path + ".unstable_dim (orbit '" + orbit.id + "')",
               0, dimension);
    if (const json* period = fields.optional("period"))
        orbit.period = as_int(*period, path + ".period", 1, 1 << 20);
    return orbit;
}

HeteroclinicEdge parse_edge(const json& value, const std::string& path) {
    require_object(value, path);
    Fields fields(value, path, {"from", "to", "kind", "m"});
    HeteroclinicEdge edge;
    edge.from = as_string(fields.require("from"), path + ".from");
    edge.to = as_string(fields.require("to"), path + ".to");
    const std::string kind = as_string(fields.require("kind"), path + ".kind");
    if (kind == "points") {
        edge.kind = EdgeKind::Points;
        if (fields.optional("m") != nullptr)
            fail(path + ".m", "a points intersection carries no submanifold dimension");
    } else if (kind == "submanifold") {
        edge.kind = EdgeKind::Submanifold;
        edge.submanifold_dim = as_int(fields.require("m"), path + ".m", 1, 1 << 20);
    } else {
        fail(path + ".kind", "expected \"points\" or \"submanifold\", got \"" + kind + "\"");
    }
    return edge;
}

PortraitGraph parse_graph(const json& value, const std::string& path) {
    require_object(value, path);
    Fields fields(value, path, {"vertices", "edges"});
    PortraitGraph graph;
    const json& vertices = as_array(fields.require("vertices"), path + ".vertices");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const std::string vpath = path + ".vertices[" + std::to_string(i) + "]";
        require_object(vertices[i], vpath);
        Fields vfields(vertices[i], vpath, {"id", "saddle_inventory"});
        PolarPiece piece;
        piece.id = as_string(vfields.require("id"), vpath + ".id");
        if (const json* inventory = vfields.optional("saddle_inventory")) {
            const json& arr = as_array(*inventory, vpath + ".saddle_inventory");
            for (std::size_t j = 0; j < arr.size(); ++j)
                piece.saddle_inventory.push_back(as_int(
                    arr[j], vpath + ".saddle_inventory[" + std::to_string(j) + "]", 0, 1 << 20));
        }
        graph.vertices.push_back(std::move(piece));
    }
    const json& edges = as_array(fields.require("edges"), path + ".edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string epath = path + ".edges[" + std::to_string(i) + "]";
        require_object(edges[i], epath);
        Fields efields(edges[i], epath, {"saddle_id", "a", "b"});
        graph.edges.push_back({as_string(efields.require("saddle_id"), epath + ".saddle_id"),
                               as_string(efields.require("a"), epath + ".a"),
                               as_string(efields.require("b"), epath + ".b")});
    }
    return graph;
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw schema_error("syntax error at line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + e.what());
    }

    require_object(root, "scenario");
    Fields fields(root, "scenario",
                  {"dimension", "system_kind", "orientable", "orbits", "edges", "betti",
                   "pi1_free_rank", "graph"});

    Scenario scenario;
    OrbitPortrait& portrait = scenario.portrait;
    portrait.dimension = as_int(fields.require("dimension"), "scenario.dimension", 3, 1 << 20);

    const std::string kind = as_string(fields.require("system_kind"), "scenario.system_kind");
    if (kind == "diffeomorphism")
        portrait.system_kind = SystemKind::Diffeomorphism;
    else if (kind == "gradient_like_flow")
        portrait.system_kind = SystemKind::GradientLikeFlow;
    else
        fail("scenario.system_kind",
             "expected \"diffeomorphism\" or \"gradient_like_flow\", got \"" + kind + "\"");

    if (const json* orientable = fields.optional("orientable"))
        portrait.orientable = as_bool(*orientable, "scenario.orientable");

    const json& orbits = as_array(fields.require("orbits"), "scenario.orbits");
    for (std::size_t i = 0; i < orbits.size(); ++i)
        portrait.orbits.push_back(
            parse_orbit(orbits[i], "scenario.orbits[" + std::to_string(i) + "]",
                        portrait.dimension));

    if (const json* edges = fields.optional("edges")) {
        const json& arr = as_array(*edges, "scenario.edges");
        for (std::size_t i = 0; i < arr.size(); ++i)
            portrait.edges.push_back(parse_edge(arr[i], "scenario.edges[" + std::to_string(i) + "]"));
    }

    if (const json* betti = fields.optional("betti")) {
        const json& arr = as_array(*betti, "scenario.betti");
        if (arr.size() != static_cast<std::size_t>(portrait.dimension) + 1)
            fail("scenario.betti", "expected " + std::to_string(portrait.dimension + 1) +
                                       " entries (beta_0 .. beta_n), got " +
                                       std::to_string(arr.size()));
        std::vector<int> values;
        for (std::size_t i = 0; i < arr.size(); ++i)
            values.push_back(as_int(arr[i], "scenario.betti[" + std::to_string(i) + "]", 0, 1 << 30));
        portrait.betti = std::move(values);
    }

    if (const json* rank = fields.optional("pi1_free_rank"))
        portrait.pi1_free_rank = as_int(*rank, "scenario.pi1_free_rank", 0, 1 << 30);

    if (const json* graph = fields.optional("graph"))
        scenario.graph = parse_graph(*graph, "scenario.graph");

    return scenario;
}

std::string render_scenario(const Scenario& s) {
    const OrbitPortrait& portrait = s.portrait;
    json root;
    root["dimension"] = portrait.dimension;
    root["system_kind"] = to_string(portrait.system_kind);
    if (portrait.orientable.has_value()) root["orientable"] = *portrait.orientable;
    root["orbits"] = json::array();
    for (const auto& orbit : portrait.orbits) {
        json o;
        o["id"] = orbit.id;
        o["kind"] = to_string(orbit.kind);
        o["unstable_dim"] = orbit.unstable_dim;
        o["period"] = orbit.period;
        root["orbits"].push_back(std::move(o));
    }
    root["edges"] = json::array();
    for (const auto& edge : portrait.edges) {
        json e;
        e["from"] = edge.from;
        e["to"] = edge.to;
        if (edge.kind == EdgeKind::Points) {
            e["kind"] = "points";
        } else {
            e["kind"] = "submanifold";
            e["m"] = edge.submanifold_dim;
        }
        root["edges"].push_back(std::move(e));
    }
    if (portrait.betti.has_value()) root["betti"] = *portrait.betti;
    if (portrait.pi1_free_rank.has_value()) root["pi1_free_rank"] = *portrait.pi1_free_rank;
    if (s.graph.has_value()) {
        json graph;
        graph["vertices"] = json::array();
        for (const auto& vertex : s.graph->vertices) {
            json v;
            v["id"] = vertex.id;
            v["saddle_inventory"] = vertex.saddle_inventory;
            graph["vertices"].push_back(std::move(v));
        }
        graph["edges"] = json::array();
        for (const auto& edge : s.graph->edges)
            graph["edges"].push_back({{"saddle_id", edge.saddle_id}, {"a", edge.a}, {"b", edge.b}});
        root["graph"] = std::move(graph);
    }
    return root.dump(2);
}

const char* to_string(SystemKind k) {
    return k == SystemKind::Diffeomorphism ? "diffeomorphism" : "gradient_like_flow";
}

const char* to_string(OrbitKind k) {
    switch (k) {
    case OrbitKind::Sink: return "sink";
    case OrbitKind::Source: return "source";
    case OrbitKind::Saddle: return "saddle";
    }
    return "saddle";
}

const char* to_string(BundleType b) {
    switch (b) {
    case BundleType::Trivial: return "trivial";
    case BundleType::Skew: return "skew";
    case BundleType::Unknown: return "unknown";
    }
    return "unknown";
}

json to_json(const Violation& v) { return {{"code", v.code}, {"message", v.message}}; }

json to_json(const ValidationReport& r) {
    json violations = json::array();
    for (const auto& violation : r.violations) violations.push_back(to_json(violation));
    return {{"admissible", r.admissible()}, {"violations", std::move(violations)}};
}

json to_json(const OrbitCounts& c) {
    return {{"mu", c.mu}, {"nu", c.nu}, {"other_saddles", c.other_saddles}};
}

json to_json(const GenusResult& r) {
    json out = {{"parity_ok", r.parity_ok}, {"valid", r.valid()}};
    if (r.parity_ok) {
        out["g"] = r.g;
        out["k"] = r.k;
    }
    return out;
}

json to_json(const MorseReport& r) {
    return {{"counts", r.counts},
            {"betti", r.betti},
            {"inequality_verdicts", r.inequality_verdicts},
            {"euler_ok", r.euler_ok},
            {"all_pass", r.all_pass()}};
}

json to_json(const Conclusion& c) {
    const char* verdict = nullptr;
    switch (c.verdict) {
    case CorollaryVerdict::MustExistHeteroclinic: verdict = "must_exist_heteroclinic"; break;
    case CorollaryVerdict::MustHavePeriodicTrajectory:
        verdict = "must_have_periodic_trajectory";
        break;
    case CorollaryVerdict::Inconclusive: verdict = "inconclusive"; break;
    }
    return {{"verdict", verdict}, {"statement", c.statement}};
}

json to_json(const Claim& c) { return {{"text", c.text}, {"rule", c.rule}}; }

json to_json(const PolarPiece& piece) {
    return {{"id", piece.id},
            {"saddle_inventory", piece.saddle_inventory},
            {"is_sphere", piece.is_sphere()}};
}

json to_json(const ConnectedSumExpr& e) {
    json bundles = json::array();
    for (BundleType type : e.bundle_types) bundles.push_back(to_string(type));
    json pieces = json::array();
    for (const auto& piece : e.pieces) pieces.push_back(to_json(piece));
    json claims = json::array();
    for (const auto& claim : e.claims) claims.push_back(to_json(claim));
    return {{"expression", e.to_string()},
            {"g", e.g},
            {"l", e.l()},
            {"bundle_types", std::move(bundles)},
            {"pieces", std::move(pieces)},
            {"claims", std::move(claims)}};
}

json to_json(const CutRecord& r) {
    return {{"saddle_id", r.saddle_id},
            {"splitting", r.splitting},
            {"component_count_after", r.component_count_after}};
}

json to_json(const Decomposition& d) {
    json cuts = json::array();
    for (const auto& record : d.cuts) cuts.push_back(to_json(record));
    return {{"manifold", to_json(d.expr)}, {"cuts", std::move(cuts)}};
}

json to_json(const ProjectiveReport& r) {
    json claims = json::array();
    for (const auto& claim : r.structure_claims) claims.push_back(to_json(claim));
    json out = {{"admissible", r.admissible}, {"n", r.n},
                {"k", r.k},                   {"mu", r.mu},
                {"nu", r.nu},                 {"g", r.g},
                {"structure_claims", std::move(claims)},
                {"rejection_reasons", r.rejection_reasons}};
    if (r.admissible) out["manifold"] = to_json(r.decomposition);
    return out;
}

json to_json(const PlanStep& s) {
    if (const auto* block = std::get_if<BlockStep>(&s)) {
        const char* kind = nullptr;
        switch (block->kind) {
        case BlockKind::Vsink: kind = "v_sink"; break;
        case BlockKind::Vsource: kind = "v_source"; break;
        case BlockKind::VnuSink: kind = "v_nu_sink"; break;
        case BlockKind::Va: kind = "v_a"; break;
        case BlockKind::MinusVb: kind = "minus_v_b"; break;
        }
        json out = {{"step", "block"}, {"kind", kind}, {"boundary", block->boundary}};
        if (block->count > 0) out["count"] = block->count;
        return out;
    }
    if (const auto* glue = std::get_if<GlueStep>(&s))
        return {{"step", "glue"}, {"boundary_a", glue->boundary_a}, {"boundary_b", glue->boundary_b}};
    if (const auto* del = std::get_if<DeleteNodePairStep>(&s))
        return {{"step", "delete_node_pair"},
                {"source_id", del->source_id},
                {"sink_id", del->sink_id}};
    const auto& sphere = std::get<GlueSpherePairStep>(s);
    return {{"step", "glue_sphere_pair"},
            {"boundary_a", sphere.boundary_a},
            {"boundary_b", sphere.boundary_b}};
}

json to_json(const RealizationPlan& plan) {
    json steps = json::array();
    for (const auto& step : plan.steps) steps.push_back(to_json(step));
    return {{"n", plan.n},
            {"nu", plan.nu},
            {"mu", plan.mu},
            {"g", plan.g},
            {"steps", std::move(steps)},
            {"expected_manifold", to_json(plan.expected_manifold)}};
}

} // namespace msd
