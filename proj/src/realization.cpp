#include "msdecomp/realization.hpp"

#include "msdecomp/errors.hpp"
#include "msdecomp/morse.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace msd {

RealizationPlan plan_realization(int n, int nu, int mu) {
    if (n < 3)
        throw precondition_error("plan_realization: n >= 3 violated (n = " + std::to_string(n) + ")");
    if (mu < 2)
        throw precondition_error("plan_realization: mu >= 2 violated (mu = " + std::to_string(mu) + ")");
    if (nu < 0)
        throw precondition_error("plan_realization: nu >= 0 violated (nu = " + std::to_string(nu) + ")");
    if ((mu + nu) % 2 != 0)
        throw precondition_error("plan_realization: mu + nu must be even (parity), got " +
                                 std::to_string(mu) + " + " + std::to_string(nu) + " = " +
                                 std::to_string(mu + nu));
    if (nu < mu - 2)
        throw precondition_error("plan_realization: nu >= mu - 2 violated (nu = " +
                                 std::to_string(nu) + ", mu = " + std::to_string(mu) + ")");

    RealizationPlan plan;
    plan.n = n;
    plan.nu = nu;
    plan.mu = mu;
    plan.g = (nu - mu + 2) / 2;

    if (plan.g == 0) {
        if (nu == 0) {
            plan.steps.push_back(BlockStep{BlockKind::Vsink, 0, "block_1"});
            plan.steps.push_back(BlockStep{BlockKind::Vsource, 0, "block_2"});
        } else {
            plan.steps.push_back(BlockStep{BlockKind::Vsource, 0, "block_1"});
            plan.steps.push_back(BlockStep{BlockKind::VnuSink, nu, "block_2"});
        }
        plan.steps.push_back(GlueStep{"block_1", "block_2"});
        // expected_manifold stays S^n: g = 0, no pieces listed
        return plan;
    }

    const int a = nu / 2;
    const int b = (nu + 1) / 2;
    plan.steps.push_back(BlockStep{BlockKind::Va, a, "block_1"});
    plan.steps.push_back(BlockStep{BlockKind::MinusVb, b, "block_2"});
    plan.steps.push_back(GlueStep{"block_1", "block_2"});

    const int handle_count = (nu - mu) / 2;
    for (int i = 0; i < handle_count; ++i) {
        const std::string source_id = "source_" + std::to_string(i);
        const std::string sink_id = "sink_" + std::to_string(i);
        plan.steps.push_back(DeleteNodePairStep{source_id, sink_id});
        plan.steps.push_back(GlueSpherePairStep{"boundary:" + source_id, "boundary:" + sink_id});
    }

    plan.expected_manifold.g = plan.g;
    plan.expected_manifold.bundle_types.assign(static_cast<std::size_t>(plan.g),
                                               BundleType::Trivial);
    return plan;
}

namespace {

enum class BoundaryShape { Sphere, SphereCrossCircle };
enum class Orientation { Inward, Outward };

struct BlockTraits {
    BoundaryShape shape;
    Orientation orientation;
};

BlockTraits traits_of(BlockKind kind) {
    switch (kind) {
    case BlockKind::Vsink: return {BoundaryShape::Sphere, Orientation::Inward};
    case BlockKind::Vsource: return {BoundaryShape::Sphere, Orientation::Outward};
    case BlockKind::VnuSink: return {BoundaryShape::Sphere, Orientation::Inward};
    case BlockKind::Va: return {BoundaryShape::SphereCrossCircle, Orientation::Inward};
    case BlockKind::MinusVb: return {BoundaryShape::SphereCrossCircle, Orientation::Outward};
    }
    throw precondition_error("simulate_plan: unknown block kind");
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t size) : parent(size) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

struct Assembly {
    std::vector<PeriodicOrbit> orbits;
    std::vector<std::string> piece_ids;
    std::vector<CutEdge> edges;                    // endpoints are piece indices as ids
    std::map<std::string, std::size_t> node_piece; // orbit id -> piece index
};

void add_orbit(Assembly& out, const std::string& id, OrbitKind kind, int unstable_dim,
               std::size_t piece) {
    out.orbits.push_back({id, kind, unstable_dim, 1});
    if (kind != OrbitKind::Saddle) out.node_piece[id] = piece;
}

std::string piece_name(std::size_t i) { return "piece_" + std::to_string(i); }

/// Lays out the closed manifold produced by gluing the two blocks.
Assembly assemble(const BlockStep& first, const BlockStep& second, int n) {
    // Normalize so dispatch is order-insensitive.
    const BlockStep* x = &first;
    const BlockStep* y = &second;
    auto is_pair = [&](BlockKind p, BlockKind q) {
        if (x->kind == p && y->kind == q) return true;
        if (x->kind == q && y->kind == p) {
            std::swap(x, y);
            return true;
        }
        return false;
    };

    Assembly out;
    if (is_pair(BlockKind::Vsink, BlockKind::Vsource)) {
        out.piece_ids = {piece_name(0)};
        add_orbit(out, "sink_0", OrbitKind::Sink, 0, 0);
        add_orbit(out, "source_0", OrbitKind::Source, n, 0);
        return out;
    }
    if (is_pair(BlockKind::Vsource, BlockKind::VnuSink)) {
        // Star: the central piece holds the big source and the block's sink;
        // each saddle separates one of the block's sources into a leaf piece.
        const int nu = y->count;
        for (int i = 0; i <= nu; ++i) out.piece_ids.push_back(piece_name(static_cast<std::size_t>(i)));
        add_orbit(out, "source_0", OrbitKind::Source, n, 0);
        add_orbit(out, "sink_0", OrbitKind::Sink, 0, 0);
        for (int i = 0; i < nu; ++i) {
            const std::string saddle_id = "saddle_" + std::to_string(i);
            add_orbit(out, saddle_id, OrbitKind::Saddle, n - 1, 0);
            add_orbit(out, "source_" + std::to_string(i + 1), OrbitKind::Source, n,
                      static_cast<std::size_t>(i + 1));
            out.edges.push_back({saddle_id, piece_name(0), piece_name(static_cast<std::size_t>(i + 1))});
        }
        return out;
    }
    if (is_pair(BlockKind::Va, BlockKind::MinusVb)) {
        // Ring: nu = a + b pieces in cyclic order, sinks first, then sources;
        // each saddle's separatrix sphere sits between consecutive pieces.
        const int a = x->count;
        const int b = y->count;
        const int nu = a + b;
        for (int i = 0; i < nu; ++i) out.piece_ids.push_back(piece_name(static_cast<std::size_t>(i)));
        for (int i = 0; i < a; ++i) {
            add_orbit(out, "sink_" + std::to_string(i), OrbitKind::Sink, 0,
                      static_cast<std::size_t>(i));
            add_orbit(out, "saddle_" + std::to_string(i), OrbitKind::Saddle, 1, 0);
        }
        for (int j = 0; j < b; ++j) {
            add_orbit(out, "source_" + std::to_string(j), OrbitKind::Source, n,
                      static_cast<std::size_t>(a + j));
            add_orbit(out, "saddle_" + std::to_string(a + j), OrbitKind::Saddle, n - 1, 0);
        }
        for (int i = 0; i < nu; ++i)
            out.edges.push_back({"saddle_" + std::to_string(i),
                                 piece_name(static_cast<std::size_t>(i)),
                                 piece_name(static_cast<std::size_t>((i + 1) % nu))});
        return out;
    }
    throw precondition_error("simulate_plan: blocks '" + first.boundary + "' and '" +
                             second.boundary + "' do not assemble into a closed manifold");
}

} // namespace

SimulationResult simulate_plan(const RealizationPlan& plan) {
    const auto& steps = plan.steps;
    if (steps.size() < 3 || !std::holds_alternative<BlockStep>(steps[0]) ||
        !std::holds_alternative<BlockStep>(steps[1]))
        throw precondition_error("simulate_plan: a plan starts with two block steps");

    const BlockStep& first = std::get<BlockStep>(steps[0]);
    const BlockStep& second = std::get<BlockStep>(steps[1]);
    for (const BlockStep* block : {&first, &second}) {
        const bool parameterized = block->kind == BlockKind::VnuSink ||
                                   block->kind == BlockKind::Va ||
                                   block->kind == BlockKind::MinusVb;
        if (parameterized && block->count < 1)
            throw precondition_error("simulate_plan: block '" + block->boundary +
                                     "' needs a positive count");
        if (!parameterized && block->count != 0)
            throw precondition_error("simulate_plan: block '" + block->boundary +
                                     "' takes no count");
        if (block->boundary.empty())
            throw precondition_error("simulate_plan: block without a boundary label");
    }
    if (first.boundary == second.boundary)
        throw precondition_error("simulate_plan: the two block boundaries share a label");

    if (!std::holds_alternative<GlueStep>(steps[2]))
        throw precondition_error("simulate_plan: expected the glue step after the two blocks");
    const GlueStep& glue = std::get<GlueStep>(steps[2]);
    const std::set<std::string> glued{glue.boundary_a, glue.boundary_b};
    if (glued != std::set<std::string>{first.boundary, second.boundary})
        throw precondition_error("simulate_plan: glue references boundaries '" + glue.boundary_a +
                                 "', '" + glue.boundary_b + "' instead of the two block boundaries");
    const BlockTraits traits_first = traits_of(first.kind);
    const BlockTraits traits_second = traits_of(second.kind);
    if (traits_first.shape != traits_second.shape)
        throw precondition_error("simulate_plan: boundary shapes of the two blocks differ");
    if (traits_first.orientation == traits_second.orientation)
        throw precondition_error(
            "simulate_plan: the vector fields must be co-oriented oppositely on the glued "
            "boundary (one outward, one inward)");

    Assembly assembly = assemble(first, second, plan.n);

    UnionFind uf(assembly.piece_ids.size());
    std::set<std::string> deleted;
    std::optional<DeleteNodePairStep> pending;

    for (std::size_t i = 3; i < steps.size(); ++i) {
        if (const auto* del = std::get_if<DeleteNodePairStep>(&steps[i])) {
            if (pending.has_value())
                throw precondition_error(
                    "simulate_plan: previous node deletion left unglued boundary spheres");
            auto locate = [&](const std::string& id, OrbitKind expected,
                              const char* role) -> std::size_t {
                if (deleted.count(id) > 0)
                    throw precondition_error("simulate_plan: node '" + id + "' already deleted");
                for (const auto& orbit : assembly.orbits)
                    if (orbit.id == id) {
                        if (orbit.kind != expected)
                            throw precondition_error("simulate_plan: '" + id + "' is not a " + role);
                        return assembly.node_piece.at(id);
                    }
                throw precondition_error("simulate_plan: unknown node '" + id + "'");
            };
            const std::size_t src_piece = locate(del->source_id, OrbitKind::Source, "source");
            const std::size_t snk_piece = locate(del->sink_id, OrbitKind::Sink, "sink");
            if (uf.find(src_piece) == uf.find(snk_piece))
                throw precondition_error(
                    "simulate_plan: '" + del->source_id + "' and '" + del->sink_id +
                    "' lie in the same piece; the sphere gluing needs two distinct pieces");
            deleted.insert(del->source_id);
            deleted.insert(del->sink_id);
            pending = *del;
        } else if (const auto* sphere = std::get_if<GlueSpherePairStep>(&steps[i])) {
            if (!pending.has_value())
                throw precondition_error(
                    "simulate_plan: sphere gluing without a preceding node deletion");
            const std::set<std::string> want{"boundary:" + pending->source_id,
                                             "boundary:" + pending->sink_id};
            if (std::set<std::string>{sphere->boundary_a, sphere->boundary_b} != want)
                throw precondition_error("simulate_plan: sphere gluing references '" +
                                         sphere->boundary_a + "', '" + sphere->boundary_b +
                                         "' instead of the deleted nodes' boundaries");
            uf.unite(assembly.node_piece.at(pending->source_id),
                     assembly.node_piece.at(pending->sink_id));
            pending.reset();
        } else {
            throw precondition_error(
                "simulate_plan: only node deletions and sphere gluings may follow the glue step");
        }
    }
    if (pending.has_value())
        throw precondition_error("simulate_plan: plan ends with unglued boundary spheres");

    SimulationResult result;
    result.portrait.dimension = plan.n;
    result.portrait.system_kind = SystemKind::Diffeomorphism;
    result.portrait.orientable = true;
    for (const auto& orbit : assembly.orbits)
        if (deleted.count(orbit.id) == 0) result.portrait.orbits.push_back(orbit);

    // Collapse merged pieces; representative keeps the concatenated name.
    std::map<std::size_t, std::string> merged_name;
    for (std::size_t i = 0; i < assembly.piece_ids.size(); ++i) {
        const std::size_t root = uf.find(i);
        auto [it, inserted] = merged_name.emplace(root, assembly.piece_ids[i]);
        if (!inserted) it->second += "+" + assembly.piece_ids[i];
    }
    for (const auto& [root, name] : merged_name)
        result.graph.vertices.push_back({name, {}});
    for (const auto& edge : assembly.edges) {
        auto index_of = [&](const std::string& id) {
            for (std::size_t i = 0; i < assembly.piece_ids.size(); ++i)
                if (assembly.piece_ids[i] == id) return i;
            throw precondition_error("simulate_plan: internal piece lookup failed");
        };
        result.graph.edges.push_back({edge.saddle_id, merged_name.at(uf.find(index_of(edge.a))),
                                      merged_name.at(uf.find(index_of(edge.b)))});
    }

    // The simulation contract: the result is admissible and consistent.
    const ValidationReport report = validate_portrait(result.portrait);
    if (!report.admissible())
        throw hypothesis_error("simulate_plan: produced an inadmissible portrait: " +
                               report.violations.front().message);
    check_graph_consistency(result.portrait, result.graph);
    return result;
}

bool verify_round_trip(int n, int nu, int mu) {
    const RealizationPlan plan = plan_realization(n, nu, mu);
    const SimulationResult sim = simulate_plan(plan);

    const OrbitCounts counts = orbit_counts(sim.portrait);
    if (counts.mu != mu || counts.nu != nu || counts.other_saddles != 0) return false;

    const Decomposition dec = decompose(sim.portrait, sim.graph);
    if (!same_manifold_shape(dec.expr, plan.expected_manifold)) return false;
    if (dec.expr.g != plan.g) return false;

    const GenusResult gen = genus(mu, nu);
    if (!gen.valid() || gen.g != dec.expr.g) return false;

    // The planner's gluings are rigid rotations: the twisted summands it
    // promises are trivial products.
    for (BundleType type : plan.expected_manifold.bundle_types)
        if (type != BundleType::Trivial) return false;
    return true;
}

} // namespace msd
