#pragma once

#include <optional>
#include <string>
#include <vector>

namespace msd {

enum class SystemKind { Diffeomorphism, GradientLikeFlow };

enum class OrbitKind { Sink, Source, Saddle };

/// One periodic orbit of the system, stored once with its period. All counts
/// derived from a portrait are point counts, i.e. weighted by period.
struct PeriodicOrbit {
    std::string id;
    OrbitKind kind = OrbitKind::Saddle;
    int unstable_dim = 0; // dim W^u
    int period = 1;       // gradient-like flows: always 1

    bool operator==(const PeriodicOrbit&) const = default;
};

/// A saddle is codimension one when one of its separatrices has codimension
/// one, i.e. unstable_dim is 1 or n-1.
bool is_codim_one(const PeriodicOrbit& orbit, int dimension);

enum class EdgeKind { Points, Submanifold };

/// A heteroclinic intersection W^s(from) ∩ W^u(to) between two distinct
/// saddles: `from` is the saddle whose stable manifold is hit, `to` the
/// saddle whose unstable manifold does the hitting. Trajectories run from
/// `to` down to `from`.
struct HeteroclinicEdge {
    std::string from;
    std::string to;
    EdgeKind kind = EdgeKind::Points;
    int submanifold_dim = 0; // m >= 1 iff kind == Submanifold

    bool operator==(const HeteroclinicEdge&) const = default;
};

/// Full discrete description of a Morse-Smale system on a closed n-manifold:
/// dimension, system kind, periodic orbits, heteroclinic edges, and the
/// optional ambient data (orientability, Betti numbers, free rank of pi_1)
/// supplied by the user rather than computed.
struct OrbitPortrait {
    int dimension = 3; // n >= 3
    SystemKind system_kind = SystemKind::Diffeomorphism;
    std::optional<bool> orientable;
    std::vector<PeriodicOrbit> orbits;
    std::vector<HeteroclinicEdge> edges;
    std::optional<std::vector<int>> betti;  // beta_0 .. beta_n
    std::optional<int> pi1_free_rank;       // largest r with Z * ... * Z (r factors) in pi_1

    const PeriodicOrbit* find_orbit(const std::string& id) const;

    bool operator==(const OrbitPortrait&) const = default;
};

/// Dimension of the transversal intersection W^s(from) ∩ W^u(to):
///   dim W^u(to) + dim W^s(from) - n.
/// Negative means transversality forces the intersection to be empty.
/// Throws precondition_error if either endpoint is missing or not a saddle.
int intersection_dim(const OrbitPortrait& p, const HeteroclinicEdge& e);

/// True when the edge lands on a codimension-one separatrix of one of its
/// endpoints: on the stable side of `from` (unstable_dim(from) == 1) or the
/// unstable side of `to` (unstable_dim(to) == n-1).
bool touches_codim_one_separatrix(const OrbitPortrait& p, const HeteroclinicEdge& e);

struct Violation {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool admissible() const { return violations.empty(); }
};

/// Checks every structural invariant of the portrait plus the admissibility
/// hypothesis: no codimension-one separatrix carries a heteroclinic
/// submanifold, and for gradient-like flows no heteroclinic intersection at
/// all. Heteroclinic points on codimension-one separatrices are allowed for
/// diffeomorphisms. Pure and idempotent.
ValidationReport validate_portrait(const OrbitPortrait& p);

struct OrbitCounts {
    int mu = 0;            // node (sink + source) points
    int nu = 0;            // codimension-one saddle points
    int other_saddles = 0; // remaining saddle points
};

/// Point counts, period-weighted. Expects an admissible portrait.
OrbitCounts orbit_counts(const OrbitPortrait& p);

} // namespace msd
