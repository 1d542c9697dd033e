#pragma once

#include "msdecomp/morse.hpp"
#include "msdecomp/portrait.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace msd {

/// A prospective polar piece of the decomposition. The inventory lists the
/// unstable dimensions of the non-codimension-one saddle points assigned to
/// this piece (one entry per point). A piece with an empty inventory is a
/// sphere.
struct PolarPiece {
    std::string id;
    std::vector<int> saddle_inventory;

    bool is_sphere() const { return saddle_inventory.empty(); }
    bool operator==(const PolarPiece&) const = default;
};

/// One cut locus: the codimension-one separatrix sphere of a saddle point,
/// joining the two pieces on its sides (a == b for a loop).
struct CutEdge {
    std::string saddle_id;
    std::string a;
    std::string b;

    bool is_loop() const { return a == b; }
    bool operator==(const CutEdge&) const = default;
};

/// Multigraph surrogate for the cut/reglue structure: vertices are the
/// prospective polar pieces, edges the codimension-one saddles. Loops and
/// parallel edges are allowed. A consistent graph is connected, has exactly
/// nu edges and k = (mu + nu)/2 vertices, and its cycle rank |E| - |V| + 1
/// equals the genus g.
struct PortraitGraph {
    std::vector<PolarPiece> vertices;
    std::vector<CutEdge> edges;

    const PolarPiece* find_vertex(const std::string& id) const;
    bool operator==(const PortraitGraph&) const = default;
};

enum class BundleType { Trivial, Skew, Unknown };

/// A metadata assertion attached to a decomposition, tagged with the name of
/// the rule that produced it.
struct Claim {
    std::string text;
    std::string rule;
};

/// Connected-sum expression of the supporting manifold: g twisted-product
/// summands S^{n-1} (x) S^1 plus the polar pieces. Sphere pieces are neutral
/// summands and are omitted from the printed form; if nothing remains the
/// expression is the sphere itself.
struct ConnectedSumExpr {
    int g = 0;
    std::vector<BundleType> bundle_types; // one per twisted summand
    std::vector<PolarPiece> pieces;
    std::vector<Claim> claims;

    /// Number of non-sphere pieces.
    int l() const;
    std::string to_string() const;
    /// Structural identity ignoring claims: g, bundle types, all pieces.
    std::string canonical_key() const;
};

/// Homeomorphism-shape comparison: equal g and equal multiset of non-sphere
/// piece inventories. Bundle typing and claims are ignored (the cut engine
/// never determines the bundle type).
bool same_manifold_shape(const ConnectedSumExpr& a, const ConnectedSumExpr& b);

struct CutRecord {
    std::string saddle_id;
    bool splitting = false;
    int component_count_after = 0;
};

/// The strict partial order p ≺ q on saddles given by W^s(p) ∩ W^u(q) != ∅,
/// i.e. by the heteroclinic edges, with its transitive closure.
class SmaleOrder {
public:
    SmaleOrder(std::vector<std::string> saddles,
               std::vector<std::pair<std::string, std::string>> covering,
               std::map<std::string, std::set<std::string>> successors);

    const std::vector<std::string>& saddles() const { return saddles_; }
    /// Direct relations (one per heteroclinic edge pair), deduplicated.
    const std::vector<std::pair<std::string, std::string>>& covering() const { return covering_; }
    /// Transitive: p strictly below q.
    bool precedes(const std::string& p, const std::string& q) const;
    /// Elements of `among` with no strict successor inside `among`.
    std::vector<std::string> maximal_in(const std::vector<std::string>& among) const;

private:
    std::vector<std::string> saddles_;
    std::vector<std::pair<std::string, std::string>> covering_;
    std::map<std::string, std::set<std::string>> successors_;
};

/// Builds the order from the portrait's heteroclinic edges and certifies it
/// acyclic. Throws hypothesis_error naming an offending cycle otherwise.
SmaleOrder smale_order(const OrbitPortrait& p);

/// Returns a codimension-one saddle whose codimension-one separatrix carries
/// no heteroclinic edge. Among the qualifying saddles, candidates maximal in
/// the Smale order (restricted to codimension-one saddles) are preferred and
/// ties break to the lowest id. Requires nu >= 1; throws hypothesis_error if
/// every codimension-one separatrix is hit.
std::string find_cuttable_saddle(const OrbitPortrait& p);

/// Removes one edge. splitting is true iff the removal disconnects the
/// component containing the edge (union-find over the remaining edges);
/// a loop never splits.
std::pair<PortraitGraph, CutRecord> cut(const PortraitGraph& gr, std::size_t edge_index);
/// Same, addressing the edge by its saddle id (first match when a periodic
/// orbit contributes several parallel cut loci).
std::pair<PortraitGraph, CutRecord> cut(const PortraitGraph& gr, const std::string& saddle_id);

/// Throws hypothesis_error unless the graph is a consistent surrogate for
/// the portrait: connected, |E| = nu with each codimension-one saddle orbit
/// contributing exactly `period` edges, node bookkeeping 2|V| - |E| = mu,
/// and piece inventories covering exactly the non-codimension-one saddle
/// points (entries in [2, n-2]).
void check_graph_consistency(const OrbitPortrait& p, const PortraitGraph& gr);

struct Decomposition {
    ConnectedSumExpr expr;
    std::vector<CutRecord> cuts;
};

/// Cuts every edge (input order) and assembles the connected-sum expression:
/// g = number of non-splitting cuts, pieces = the vertices with their sphere
/// flags, plus the orientable-case Betti claim. Validates the portrait and
/// the graph first.
Decomposition decompose(const OrbitPortrait& p, const PortraitGraph& gr);

/// Order-invariance oracle: runs the cut sequence over every permutation of
/// the edges and returns the distinct resulting expressions (expected to be
/// a singleton). Requires nu <= 8.
std::vector<ConnectedSumExpr> brute_force_decompose(const OrbitPortrait& p,
                                                    const PortraitGraph& gr);

/// One representative graph consistent with the portrait's counts: a path of
/// k pieces carrying all non-codimension-one saddle points on the first
/// piece, plus g extra parallel edges on the first pair (loops when k = 1).
/// Not canonical truth; the real incidence structure is dynamical data.
PortraitGraph generic_graph(const OrbitPortrait& p);

} // namespace msd
