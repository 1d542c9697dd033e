#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "msdecomp/errors.hpp"
#include "msdecomp/portrait.hpp"

#include <random>

using namespace msd;
using namespace msd::testing;

namespace {

bool has_violation(const ValidationReport& report, const std::string& code) {
    for (const auto& violation : report.violations)
        if (violation.code == code) return true;
    return false;
}

} // namespace

TEST_CASE("three-point portrait with consistent dimensions is admissible") {
    const OrbitPortrait p = three_point(3, 2);
    const ValidationReport report = validate_portrait(p);
    CHECK(report.admissible());
}

TEST_CASE("points edge with forced positive intersection dimension is rejected") {
    OrbitPortrait p;
    p.dimension = 4;
    p.orbits = {make_sink("w"), make_source("a", 4), make_saddle("p", 1), make_saddle("q", 3)};
    // W^s(p) ∩ W^u(q) has dimension 3 + 3 - 4 = 2, so "points" is impossible.
    p.edges = {{"p", "q", EdgeKind::Points, 0}};
    const ValidationReport report = validate_portrait(p);
    CHECK_FALSE(report.admissible());
    CHECK(has_violation(report, "edge-kind-mismatch"));
}

TEST_CASE("flow with an intersection on a codimension-one separatrix is rejected") {
    OrbitPortrait p;
    p.dimension = 4;
    p.system_kind = SystemKind::GradientLikeFlow;
    p.orbits = {make_sink("w"), make_source("a", 4), make_saddle("p", 1), make_saddle("q", 3)};
    p.edges = {{"p", "q", EdgeKind::Submanifold, 2}};
    const ValidationReport report = validate_portrait(p);
    CHECK_FALSE(report.admissible());
    CHECK(has_violation(report, "flow-codim-one-edge"));
}

TEST_CASE("diffeomorphisms may carry heteroclinic points on codimension-one separatrices") {
    OrbitPortrait p;
    p.dimension = 3;
    p.orbits = {make_sink("w"), make_source("a", 3), make_saddle("s", 2), make_saddle("t", 2)};
    p.edges = {{"s", "t", EdgeKind::Points, 0}}; // lands on the unstable sphere of t
    CHECK(validate_portrait(p).admissible());
}

TEST_CASE("submanifold intersections on codimension-one separatrices are rejected") {
    OrbitPortrait p;
    p.dimension = 5;
    p.orbits = {make_sink("w"), make_source("a", 5), make_saddle("p", 1), make_saddle("q", 3)};
    p.edges = {{"p", "q", EdgeKind::Submanifold, 2}}; // stable side of p has codimension one
    const ValidationReport report = validate_portrait(p);
    CHECK_FALSE(report.admissible());
    CHECK(has_violation(report, "codim-one-submanifold"));
}

TEST_CASE("structural violations are each reported") {
    OrbitPortrait p;
    p.dimension = 4;
    p.orbits = {make_sink("w"), make_sink("w"), make_source("a", 4)};
    p.edges = {{"w", "missing", EdgeKind::Points, 0}};
    const ValidationReport report = validate_portrait(p);
    CHECK(has_violation(report, "duplicate-id"));
    CHECK(has_violation(report, "unknown-endpoint"));
    CHECK(has_violation(report, "endpoint-not-saddle"));

    OrbitPortrait bad_kind = north_south(4);
    bad_kind.orbits[0].unstable_dim = 1; // a sink with a nontrivial unstable manifold
    CHECK(has_violation(validate_portrait(bad_kind), "kind-dim-mismatch"));

    OrbitPortrait self_loop = three_point(4, 2);
    self_loop.orbits.push_back(make_saddle("r", 2));
    self_loop.edges = {{"r", "r", EdgeKind::Points, 0}};
    CHECK(has_violation(validate_portrait(self_loop), "self-edge"));

    OrbitPortrait empty_edge = three_point(6, 2);
    empty_edge.orbits.push_back(make_saddle("r", 4));
    empty_edge.edges = {{"r", "sigma", EdgeKind::Points, 0}}; // 2 + 2 - 6 < 0
    CHECK(has_violation(validate_portrait(empty_edge), "empty-intersection"));

    OrbitPortrait flow_points = three_point(4, 2, SystemKind::GradientLikeFlow);
    flow_points.orbits.push_back(make_saddle("r", 2));
    flow_points.edges = {{"r", "sigma", EdgeKind::Points, 0}};
    CHECK(has_violation(validate_portrait(flow_points), "flow-points-edge"));

    OrbitPortrait flow_period = north_south(3);
    flow_period.system_kind = SystemKind::GradientLikeFlow;
    flow_period.orbits[0].period = 2;
    CHECK(has_violation(validate_portrait(flow_period), "flow-period"));
}

TEST_CASE("orbit counts are period-weighted point counts") {
    CHECK(orbit_counts(north_south(3)).mu == 2);
    CHECK(orbit_counts(north_south(3)).nu == 0);
    CHECK(orbit_counts(north_south(3)).other_saddles == 0);

    const OrbitPortrait polar = three_point(4, 2);
    const OrbitCounts counts = orbit_counts(polar);
    CHECK(counts.mu == 2);
    CHECK(counts.nu == 0);
    CHECK(counts.other_saddles == 1);

    OrbitPortrait weighted;
    weighted.dimension = 4;
    weighted.orbits = {make_sink("w0"), make_sink("w1"), make_source("a0", 4),
                       make_source("a1", 4), make_saddle("s", 3, 2)};
    const OrbitCounts wc = orbit_counts(weighted);
    CHECK(wc.mu == 4);
    CHECK(wc.nu == 2);
    CHECK(wc.other_saddles == 0);
}

TEST_CASE("point counts partition the periodic points") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const RandomCase rc = random_admissible_case(rng, 6);
        const OrbitCounts counts = orbit_counts(rc.portrait);
        int total = 0;
        for (const auto& orbit : rc.portrait.orbits) total += orbit.period;
        CHECK(counts.mu + counts.nu + counts.other_saddles == total);
    }
}

TEST_CASE("edge kind is a pure function of the endpoint dimensions") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = std::uniform_int_distribution<int>(3, 9)(rng);
        const int u_from = std::uniform_int_distribution<int>(1, n - 1)(rng);
        const int u_to = std::uniform_int_distribution<int>(u_from, n - 1)(rng);
        OrbitPortrait p;
        p.dimension = n;
        p.orbits = {make_saddle("p", u_from), make_saddle("q", u_to)};
        const int d = u_to - u_from;
        HeteroclinicEdge edge{"p", "q", d == 0 ? EdgeKind::Points : EdgeKind::Submanifold, d};
        CHECK(intersection_dim(p, edge) == d);
        p.edges = {edge};
        // Regenerating the kind from the dimensions leaves the report clean.
        const ValidationReport report = validate_portrait(p);
        for (const auto& violation : report.violations)
            CHECK(violation.code != "edge-kind-mismatch");
    }
}

TEST_CASE("validation is idempotent and side-effect-free") {
    const OrbitPortrait p = three_point(4, 2);
    const OrbitPortrait copy = p;
    const ValidationReport first = validate_portrait(p);
    const ValidationReport second = validate_portrait(p);
    CHECK(p == copy);
    CHECK(first.admissible() == second.admissible());
    CHECK(first.violations.size() == second.violations.size());
}

TEST_CASE("intersection_dim rejects non-saddle endpoints") {
    const OrbitPortrait p = north_south(3);
    CHECK_THROWS_AS(intersection_dim(p, {"omega", "alpha", EdgeKind::Points, 0}),
                    precondition_error);
}
