#pragma once

#include "msdecomp/cut.hpp"
#include "msdecomp/portrait.hpp"

#include <string>
#include <variant>
#include <vector>

namespace msd {

enum class BlockKind {
    Vsink,    // disk block, one sink, boundary sphere, field inward
    Vsource,  // disk block, one source, boundary sphere, field outward
    VnuSink,  // disk block: nu codim-one saddles, one sink, nu sources, inward
    Va,       // D^{n-1} x S^1 block: a sinks, a codim-one saddles, inward
    MinusVb,  // D^{n-1} x S^1 block: b sources, b codim-one saddles, outward
};

struct BlockStep {
    BlockKind kind = BlockKind::Vsink;
    int count = 0;        // nu / a / b for the parameterized kinds, else 0
    std::string boundary; // label of the free boundary this block exposes
};

/// Joins the two block boundaries; the vector fields must be co-oriented
/// oppositely there (one points outward, the other inward) and the boundary
/// shapes must agree.
struct GlueStep {
    std::string boundary_a;
    std::string boundary_b;
};

/// Removes a ball neighborhood of one source and one sink.
struct DeleteNodePairStep {
    std::string source_id;
    std::string sink_id;
};

/// Identifies the two boundary spheres left by the preceding node deletion,
/// attaching a handle (never splits).
struct GlueSpherePairStep {
    std::string boundary_a;
    std::string boundary_b;
};

using PlanStep = std::variant<BlockStep, GlueStep, DeleteNodePairStep, GlueSpherePairStep>;

/// Ordered construction recipe realizing given counts (nu, mu) in dimension
/// n, together with the manifold the recipe is guaranteed to produce.
struct RealizationPlan {
    int n = 3;
    int nu = 0;
    int mu = 2;
    int g = 0;
    std::vector<PlanStep> steps;
    ConnectedSumExpr expected_manifold; // S^n, or g trivial twisted products
};

/// Requires n >= 3, mu >= 2, nu >= mu - 2 and mu + nu even; throws
/// precondition_error naming the violated constraint otherwise.
///   g = 0, nu = 0:  [Vsink, Vsource, Glue]
///   g = 0, nu >= 1: [Vsource, VnuSink(nu), Glue]
///   g >= 1:         [Va(floor(nu/2)), MinusVb(ceil(nu/2)), Glue]
///                   + (nu - mu)/2 x (DeleteNodePair, GlueSpherePair)
RealizationPlan plan_realization(int n, int nu, int mu);

struct SimulationResult {
    OrbitPortrait portrait;
    PortraitGraph graph;
};

/// Symbolic execution: each block contributes its advertised fixed points,
/// deletions remove nodes, sphere gluings merge pieces. Checks the step
/// grammar (boundary shapes and orientations, node references) and asserts
/// that the resulting portrait is admissible and the graph consistent.
SimulationResult simulate_plan(const RealizationPlan& plan);

/// plan -> simulate -> decompose closes the loop: the decomposition must
/// match the plan's expected manifold (shape-wise) and re-derive (mu, nu, g).
bool verify_round_trip(int n, int nu, int mu);

} // namespace msd
