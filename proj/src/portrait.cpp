#include "msdecomp/portrait.hpp"

#include "msdecomp/errors.hpp"

#include <set>
#include <sstream>

namespace msd {

bool is_codim_one(const PeriodicOrbit& orbit, int dimension) {
    return orbit.kind == OrbitKind::Saddle &&
           (orbit.unstable_dim == 1 || orbit.unstable_dim == dimension - 1);
}

const PeriodicOrbit* OrbitPortrait::find_orbit(const std::string& id) const {
    for (const auto& orbit : orbits)
        if (orbit.id == id) return &orbit;
    return nullptr;
}

namespace {

const PeriodicOrbit& saddle_endpoint(const OrbitPortrait& p, const std::string& id,
                                     const char* role) {
    const PeriodicOrbit* orbit = p.find_orbit(id);
    if (orbit == nullptr)
        throw precondition_error(std::string("edge ") + role + " '" + id + "' is not an orbit");
    if (orbit->kind != OrbitKind::Saddle)
        throw precondition_error(std::string("edge ") + role + " '" + id + "' is not a saddle");
    return *orbit;
}

} // namespace

int intersection_dim(const OrbitPortrait& p, const HeteroclinicEdge& e) {
    const PeriodicOrbit& from = saddle_endpoint(p, e.from, "endpoint");
    const PeriodicOrbit& to = saddle_endpoint(p, e.to, "endpoint");
    // dim W^u(to) + dim W^s(from) - n, with dim W^s(from) = n - unstable_dim(from)
    return to.unstable_dim - from.unstable_dim;
}

bool touches_codim_one_separatrix(const OrbitPortrait& p, const HeteroclinicEdge& e) {
    const PeriodicOrbit& from = saddle_endpoint(p, e.from, "endpoint");
    const PeriodicOrbit& to = saddle_endpoint(p, e.to, "endpoint");
    return from.unstable_dim == 1 || to.unstable_dim == p.dimension - 1;
}

ValidationReport validate_portrait(const OrbitPortrait& p) {
    ValidationReport report;
    auto flag = [&report](std::string code, std::string message) {
        report.violations.push_back({std::move(code), std::move(message)});
    };

    const int n = p.dimension;
    if (n < 3) flag("bad-dimension", "dimension must be at least 3, got " + std::to_string(n));

    std::set<std::string> seen;
    for (const auto& orbit : p.orbits) {
        if (!seen.insert(orbit.id).second)
            flag("duplicate-id", "orbit id '" + orbit.id + "' appears more than once");

        if (orbit.period < 1)
            flag("bad-period", "orbit '" + orbit.id + "' has non-positive period");
        else if (p.system_kind == SystemKind::GradientLikeFlow && orbit.period != 1)
            flag("flow-period",
                 "orbit '" + orbit.id + "' has period " + std::to_string(orbit.period) +
                     "; every orbit of a gradient-like flow is an equilibrium (period 1)");

        const int u = orbit.unstable_dim;
        if (u < 0 || u > n) {
            flag("dim-range", "orbit '" + orbit.id + "' has unstable_dim " + std::to_string(u) +
                                  " outside [0, " + std::to_string(n) + "]");
            continue;
        }
        switch (orbit.kind) {
        case OrbitKind::Sink:
            if (u != 0)
                flag("kind-dim-mismatch", "sink '" + orbit.id + "' must have unstable_dim 0");
            break;
        case OrbitKind::Source:
            if (u != n)
                flag("kind-dim-mismatch",
                     "source '" + orbit.id + "' must have unstable_dim " + std::to_string(n));
            break;
        case OrbitKind::Saddle:
            if (u < 1 || u > n - 1)
                flag("kind-dim-mismatch", "saddle '" + orbit.id + "' must have unstable_dim in [1, " +
                                              std::to_string(n - 1) + "]");
            break;
        }
    }

    for (const auto& edge : p.edges) {
        const std::string label = "edge " + edge.to + " -> " + edge.from;
        const PeriodicOrbit* from = p.find_orbit(edge.from);
        const PeriodicOrbit* to = p.find_orbit(edge.to);
        if (from == nullptr)
            flag("unknown-endpoint", label + ": no orbit '" + edge.from + "'");
        if (to == nullptr)
            flag("unknown-endpoint", label + ": no orbit '" + edge.to + "'");
        if (from == nullptr || to == nullptr) continue;
        bool bad_endpoint = false;
        if (from->kind != OrbitKind::Saddle) {
            flag("endpoint-not-saddle", label + ": '" + edge.from + "' is not a saddle");
            bad_endpoint = true;
        }
        if (to->kind != OrbitKind::Saddle) {
            flag("endpoint-not-saddle", label + ": '" + edge.to + "' is not a saddle");
            bad_endpoint = true;
        }
        if (bad_endpoint) continue;
        if (edge.from == edge.to) {
            flag("self-edge", label + ": heteroclinic intersections join distinct saddles");
            continue;
        }

        const int d = to->unstable_dim - from->unstable_dim;
        if (d < 0) {
            flag("empty-intersection",
                 label + ": transversal intersection dimension " + std::to_string(d) +
                     " is negative, so the intersection is empty");
            continue;
        }
        if (edge.kind == EdgeKind::Points && d != 0)
            flag("edge-kind-mismatch", label + ": intersection dimension is " + std::to_string(d) +
                                           ", not a set of points");
        if (edge.kind == EdgeKind::Submanifold && edge.submanifold_dim != d)
            flag("edge-kind-mismatch",
                 label + ": submanifold dimension " + std::to_string(edge.submanifold_dim) +
                     " does not match the forced intersection dimension " + std::to_string(d));
        if (edge.kind == EdgeKind::Submanifold && d == 0)
            flag("edge-kind-mismatch", label + ": zero-dimensional intersections are points");

        if (p.system_kind == SystemKind::GradientLikeFlow && edge.kind == EdgeKind::Points)
            flag("flow-points-edge",
                 label + ": a nonempty flow intersection contains a trajectory, so it cannot "
                         "consist of isolated points");

        // Admissibility: no heteroclinic submanifolds on codimension-one
        // separatrices; for flows, no intersection there at all.
        const bool on_codim_one =
            from->unstable_dim == 1 || to->unstable_dim == n - 1;
        if (on_codim_one) {
            if (p.system_kind == SystemKind::GradientLikeFlow)
                flag("flow-codim-one-edge",
                     label + ": a codimension-one separatrix of a gradient-like flow must carry "
                             "no heteroclinic intersection");
            else if (edge.kind == EdgeKind::Submanifold)
                flag("codim-one-submanifold",
                     label + ": a codimension-one separatrix carries a heteroclinic submanifold");
        }
    }

    return report;
}

OrbitCounts orbit_counts(const OrbitPortrait& p) {
    OrbitCounts counts;
    for (const auto& orbit : p.orbits) {
        if (orbit.kind == OrbitKind::Sink || orbit.kind == OrbitKind::Source)
            counts.mu += orbit.period;
        else if (is_codim_one(orbit, p.dimension))
            counts.nu += orbit.period;
        else
            counts.other_saddles += orbit.period;
    }
    return counts;
}

} // namespace msd
