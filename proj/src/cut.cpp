#include "msdecomp/cut.hpp"

#include "msdecomp/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace msd {

namespace {

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
    std::size_t component_count() {
        std::size_t count = 0;
        for (std::size_t i = 0; i < parent.size(); ++i)
            if (find(i) == i) ++count;
        return count;
    }
};

std::unordered_map<std::string, std::size_t> vertex_index(const PortraitGraph& gr) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < gr.vertices.size(); ++i)
        index.emplace(gr.vertices[i].id, i);
    return index;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += sep;
        out += parts[i];
    }
    return out;
}

} // namespace

const PolarPiece* PortraitGraph::find_vertex(const std::string& id) const {
    for (const auto& vertex : vertices)
        if (vertex.id == id) return &vertex;
    return nullptr;
}

int ConnectedSumExpr::l() const {
    int count = 0;
    for (const auto& piece : pieces)
        if (!piece.is_sphere()) ++count;
    return count;
}

std::string ConnectedSumExpr::to_string() const {
    std::vector<std::string> parts;
    for (BundleType type : bundle_types)
        parts.push_back(type == BundleType::Trivial ? "(S^{n-1} × S^1)" : "(S^{n-1} ⊗ S^1)");
    int label = 0;
    for (const auto& piece : pieces)
        if (!piece.is_sphere()) parts.push_back("N_" + std::to_string(++label));
    if (parts.empty()) return "S^n";
    return join(parts, " # ");
}

std::string ConnectedSumExpr::canonical_key() const {
    std::ostringstream key;
    key << "g=" << g << ";b=";
    std::vector<int> bundles;
    for (BundleType type : bundle_types) bundles.push_back(static_cast<int>(type));
    std::sort(bundles.begin(), bundles.end());
    for (int b : bundles) key << b;
    std::vector<std::string> piece_keys;
    for (const auto& piece : pieces) {
        std::ostringstream pk;
        pk << piece.id << ":";
        for (int dim : piece.saddle_inventory) pk << dim << ",";
        piece_keys.push_back(pk.str());
    }
    std::sort(piece_keys.begin(), piece_keys.end());
    key << ";p=" << join(piece_keys, "|");
    return key.str();
}

bool same_manifold_shape(const ConnectedSumExpr& a, const ConnectedSumExpr& b) {
    if (a.g != b.g) return false;
    auto nontrivial = [](const ConnectedSumExpr& e) {
        std::vector<std::vector<int>> inventories;
        for (const auto& piece : e.pieces)
            if (!piece.is_sphere()) {
                auto inv = piece.saddle_inventory;
                std::sort(inv.begin(), inv.end());
                inventories.push_back(std::move(inv));
            }
        std::sort(inventories.begin(), inventories.end());
        return inventories;
    };
    return nontrivial(a) == nontrivial(b);
}

SmaleOrder::SmaleOrder(std::vector<std::string> saddles,
                       std::vector<std::pair<std::string, std::string>> covering,
                       std::map<std::string, std::set<std::string>> successors)
    : saddles_(std::move(saddles)), covering_(std::move(covering)),
      successors_(std::move(successors)) {}

bool SmaleOrder::precedes(const std::string& p, const std::string& q) const {
    auto it = successors_.find(p);
    return it != successors_.end() && it->second.count(q) > 0;
}

std::vector<std::string> SmaleOrder::maximal_in(const std::vector<std::string>& among) const {
    std::vector<std::string> result;
    for (const auto& candidate : among) {
        bool dominated = false;
        for (const auto& other : among)
            if (other != candidate && precedes(candidate, other)) {
                dominated = true;
                break;
            }
        if (!dominated) result.push_back(candidate);
    }
    return result;
}

SmaleOrder smale_order(const OrbitPortrait& p) {
    std::vector<std::string> saddles;
    for (const auto& orbit : p.orbits)
        if (orbit.kind == OrbitKind::Saddle) saddles.push_back(orbit.id);
    std::sort(saddles.begin(), saddles.end());

    std::set<std::pair<std::string, std::string>> covering_set;
    std::map<std::string, std::set<std::string>> direct;
    for (const auto& edge : p.edges) {
        covering_set.insert({edge.from, edge.to});
        direct[edge.from].insert(edge.to);
    }

    // Certify acyclicity by depth-first search, reporting an offending cycle.
    std::map<std::string, int> color; // 0 unvisited, 1 on stack, 2 done
    std::vector<std::string> stack;
    auto dfs = [&](auto&& self, const std::string& node) -> void {
        color[node] = 1;
        stack.push_back(node);
        for (const auto& next : direct[node]) {
            if (color[next] == 1) {
                auto start = std::find(stack.begin(), stack.end(), next);
                std::vector<std::string> cycle(start, stack.end());
                cycle.push_back(next);
                throw hypothesis_error(
                    "smale_order: the heteroclinic relation is cyclic, violating strictness: " +
                    join(cycle, " < "));
            }
            if (color[next] == 0) self(self, next);
        }
        stack.pop_back();
        color[node] = 2;
    };
    for (const auto& saddle : saddles)
        if (color[saddle] == 0) dfs(dfs, saddle);

    // Transitive closure by search from each saddle.
    std::map<std::string, std::set<std::string>> successors;
    auto reach = [&](auto&& self, const std::string& node, std::set<std::string>& out) -> void {
        for (const auto& next : direct[node])
            if (out.insert(next).second) self(self, next, out);
    };
    for (const auto& saddle : saddles) {
        std::set<std::string> out;
        reach(reach, saddle, out);
        successors[saddle] = std::move(out);
    }

    return SmaleOrder(std::move(saddles),
                      {covering_set.begin(), covering_set.end()},
                      std::move(successors));
}

std::string find_cuttable_saddle(const OrbitPortrait& p) {
    std::vector<std::string> codim_one_ids;
    for (const auto& orbit : p.orbits)
        if (is_codim_one(orbit, p.dimension)) codim_one_ids.push_back(orbit.id);
    std::sort(codim_one_ids.begin(), codim_one_ids.end());
    if (codim_one_ids.empty())
        throw precondition_error("find_cuttable_saddle: the portrait has no codimension-one saddle");

    // A saddle is disqualified when some heteroclinic edge lands on its
    // codimension-one separatrix: as `from` with unstable_dim 1 (stable side)
    // or as `to` with unstable_dim n-1 (unstable side).
    std::set<std::string> dirty;
    for (const auto& edge : p.edges) {
        const PeriodicOrbit* from = p.find_orbit(edge.from);
        const PeriodicOrbit* to = p.find_orbit(edge.to);
        if (from != nullptr && from->unstable_dim == 1) dirty.insert(from->id);
        if (to != nullptr && to->unstable_dim == p.dimension - 1) dirty.insert(to->id);
    }

    std::vector<std::string> clean;
    for (const auto& id : codim_one_ids)
        if (dirty.count(id) == 0) clean.push_back(id);
    if (clean.empty())
        throw hypothesis_error(
            "find_cuttable_saddle: every codimension-one separatrix carries a heteroclinic "
            "intersection; no such Morse-Smale system exists");

    // Prefer candidates maximal in the Smale order among all codimension-one
    // saddles; if the maximal elements are all disqualified, any clean saddle
    // satisfies the contract. Lowest id breaks ties.
    const SmaleOrder order = smale_order(p);
    std::vector<std::string> preferred;
    for (const auto& id : order.maximal_in(codim_one_ids))
        if (dirty.count(id) == 0) preferred.push_back(id);
    const std::vector<std::string>& pool = preferred.empty() ? clean : preferred;
    return *std::min_element(pool.begin(), pool.end());
}

std::pair<PortraitGraph, CutRecord> cut(const PortraitGraph& gr, std::size_t edge_index) {
    if (edge_index >= gr.edges.size())
        throw precondition_error("cut: edge index " + std::to_string(edge_index) +
                                 " out of range (graph has " + std::to_string(gr.edges.size()) +
                                 " edges)");
    const auto index = vertex_index(gr);
    const CutEdge removed = gr.edges[edge_index];
    auto end_a = index.find(removed.a);
    auto end_b = index.find(removed.b);
    if (end_a == index.end() || end_b == index.end())
        throw precondition_error("cut: edge '" + removed.saddle_id +
                                 "' references an unknown vertex");

    PortraitGraph next = gr;
    next.edges.erase(next.edges.begin() + static_cast<std::ptrdiff_t>(edge_index));

    UnionFind uf(gr.vertices.size());
    for (const auto& edge : next.edges)
        uf.unite(index.at(edge.a), index.at(edge.b));

    CutRecord record;
    record.saddle_id = removed.saddle_id;
    record.splitting = uf.find(end_a->second) != uf.find(end_b->second);
    record.component_count_after = static_cast<int>(uf.component_count());
    return {std::move(next), record};
}

std::pair<PortraitGraph, CutRecord> cut(const PortraitGraph& gr, const std::string& saddle_id) {
    for (std::size_t i = 0; i < gr.edges.size(); ++i)
        if (gr.edges[i].saddle_id == saddle_id) return cut(gr, i);
    throw precondition_error("cut: no edge with saddle id '" + saddle_id + "'");
}

void check_graph_consistency(const OrbitPortrait& p, const PortraitGraph& gr) {
    const OrbitCounts counts = orbit_counts(p);
    const int n = p.dimension;

    if (gr.vertices.empty()) throw hypothesis_error("graph: no pieces (the manifold is nonempty)");

    std::set<std::string> vertex_ids;
    for (const auto& vertex : gr.vertices)
        if (!vertex_ids.insert(vertex.id).second)
            throw hypothesis_error("graph: duplicate vertex id '" + vertex.id + "'");

    const auto index = vertex_index(gr);
    std::map<std::string, int> edges_per_saddle;
    for (const auto& edge : gr.edges) {
        if (index.find(edge.a) == index.end())
            throw hypothesis_error("graph: edge '" + edge.saddle_id + "' references unknown vertex '" +
                                   edge.a + "'");
        if (index.find(edge.b) == index.end())
            throw hypothesis_error("graph: edge '" + edge.saddle_id + "' references unknown vertex '" +
                                   edge.b + "'");
        const PeriodicOrbit* orbit = p.find_orbit(edge.saddle_id);
        if (orbit == nullptr || !is_codim_one(*orbit, n))
            throw hypothesis_error("graph: edge saddle '" + edge.saddle_id +
                                   "' is not a codimension-one saddle of the portrait");
        ++edges_per_saddle[edge.saddle_id];
    }
    for (const auto& orbit : p.orbits) {
        if (!is_codim_one(orbit, n)) continue;
        const int have = edges_per_saddle.count(orbit.id) ? edges_per_saddle[orbit.id] : 0;
        if (have != orbit.period)
            throw hypothesis_error("graph: codimension-one saddle orbit '" + orbit.id + "' has " +
                                   std::to_string(orbit.period) + " points but " +
                                   std::to_string(have) + " edges");
    }

    if (static_cast<int>(gr.edges.size()) != counts.nu)
        throw hypothesis_error("graph: expected nu = " + std::to_string(counts.nu) +
                               " edges, got " + std::to_string(gr.edges.size()));

    const int node_budget = 2 * static_cast<int>(gr.vertices.size()) -
                            static_cast<int>(gr.edges.size());
    if (node_budget != counts.mu)
        throw hypothesis_error("graph: node bookkeeping 2|V| - |E| = " +
                               std::to_string(node_budget) + " does not match mu = " +
                               std::to_string(counts.mu));

    int inventory_total = 0;
    for (const auto& vertex : gr.vertices) {
        for (int dim : vertex.saddle_inventory) {
            if (dim < 2 || dim > n - 2)
                throw hypothesis_error(
                    "graph: piece '" + vertex.id + "' lists saddle dimension " +
                    std::to_string(dim) +
                    "; polar pieces carry no codimension-one saddles (entries lie in [2, n-2])");
            ++inventory_total;
        }
    }
    if (inventory_total != counts.other_saddles)
        throw hypothesis_error("graph: piece inventories hold " + std::to_string(inventory_total) +
                               " saddle points but the portrait has " +
                               std::to_string(counts.other_saddles) +
                               " non-codimension-one saddle points");

    UnionFind uf(gr.vertices.size());
    for (const auto& edge : gr.edges)
        uf.unite(index.at(edge.a), index.at(edge.b));
    if (uf.component_count() != 1)
        throw hypothesis_error("graph: disconnected (the supporting manifold is connected)");
}

namespace {

Decomposition run_cuts(const OrbitPortrait& p, const PortraitGraph& gr,
                       const std::vector<std::size_t>& order) {
    PortraitGraph work = gr;
    Decomposition result;
    int non_splitting = 0;

    // Remap indices as edges disappear: cut the requested original edges in
    // the given order.
    std::vector<std::size_t> remaining(gr.edges.size());
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});
    for (std::size_t original : order) {
        auto pos = std::find(remaining.begin(), remaining.end(), original);
        const std::size_t local = static_cast<std::size_t>(pos - remaining.begin());
        remaining.erase(pos);
        auto [next, record] = cut(work, local);
        work = std::move(next);
        if (!record.splitting) ++non_splitting;
        result.cuts.push_back(record);
    }

    const int final_components = result.cuts.empty()
                                     ? 1
                                     : result.cuts.back().component_count_after;
    if (final_components != static_cast<int>(gr.vertices.size()))
        throw hypothesis_error("decompose: final component count " +
                               std::to_string(final_components) + " differs from k = " +
                               std::to_string(gr.vertices.size()));

    result.expr.g = non_splitting;
    result.expr.bundle_types.assign(static_cast<std::size_t>(non_splitting), BundleType::Unknown);
    result.expr.pieces = gr.vertices;
    for (auto& piece : result.expr.pieces)
        std::sort(piece.saddle_inventory.begin(), piece.saddle_inventory.end());

    if (p.orientable.value_or(false) && !result.expr.pieces.empty())
        result.expr.claims.push_back(
            {"beta_1(N_i) = beta_{n-1}(N_i) = 0 for every polar piece N_i",
             "orientable-pieces"});
    return result;
}

void require_admissible(const OrbitPortrait& p, const char* context) {
    const ValidationReport report = validate_portrait(p);
    if (!report.admissible()) {
        std::string detail;
        for (const auto& violation : report.violations) {
            if (!detail.empty()) detail += "; ";
            detail += violation.message;
        }
        throw hypothesis_error(std::string(context) + ": portrait inadmissible: " + detail);
    }
}

} // namespace

Decomposition decompose(const OrbitPortrait& p, const PortraitGraph& gr) {
    require_admissible(p, "decompose");
    check_graph_consistency(p, gr);
    std::vector<std::size_t> order(gr.edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    return run_cuts(p, gr, order);
}

std::vector<ConnectedSumExpr> brute_force_decompose(const OrbitPortrait& p,
                                                    const PortraitGraph& gr) {
    require_admissible(p, "brute_force_decompose");
    check_graph_consistency(p, gr);
    if (gr.edges.size() > 8)
        throw precondition_error("brute_force_decompose: nu = " +
                                 std::to_string(gr.edges.size()) +
                                 " exceeds the enumeration bound 8");

    std::vector<std::size_t> order(gr.edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::map<std::string, ConnectedSumExpr> distinct;
    do {
        Decomposition d = run_cuts(p, gr, order);
        distinct.emplace(d.expr.canonical_key(), std::move(d.expr));
    } while (std::next_permutation(order.begin(), order.end()));

    std::vector<ConnectedSumExpr> result;
    result.reserve(distinct.size());
    for (auto& [key, expr] : distinct) result.push_back(std::move(expr));
    return result;
}

PortraitGraph generic_graph(const OrbitPortrait& p) {
    require_admissible(p, "generic_graph");
    const OrbitCounts counts = orbit_counts(p);
    const GenusResult gen = genus(counts.mu, counts.nu);
    if (!gen.parity_ok)
        throw hypothesis_error("generic_graph: mu + nu = " +
                               std::to_string(counts.mu + counts.nu) + " is odd");
    if (gen.g < 0)
        throw hypothesis_error("generic_graph: negative genus " + std::to_string(gen.g) +
                               "; no closed manifold supports these counts");

    PortraitGraph gr;
    for (int i = 0; i < gen.k; ++i)
        gr.vertices.push_back({"piece_" + std::to_string(i), {}});
    for (const auto& orbit : p.orbits)
        if (orbit.kind == OrbitKind::Saddle && !is_codim_one(orbit, p.dimension))
            for (int point = 0; point < orbit.period; ++point)
                gr.vertices[0].saddle_inventory.push_back(orbit.unstable_dim);
    std::sort(gr.vertices[0].saddle_inventory.begin(), gr.vertices[0].saddle_inventory.end());

    // One cut locus per codimension-one saddle point.
    std::vector<std::string> saddle_ids;
    for (const auto& orbit : p.orbits)
        if (is_codim_one(orbit, p.dimension))
            for (int point = 0; point < orbit.period; ++point) saddle_ids.push_back(orbit.id);

    std::size_t next_saddle = 0;
    for (int i = 0; i + 1 < gen.k; ++i)
        gr.edges.push_back({saddle_ids[next_saddle++], "piece_" + std::to_string(i),
                            "piece_" + std::to_string(i + 1)});
    const std::string extra_b = gen.k >= 2 ? "piece_1" : "piece_0";
    for (int i = 0; i < gen.g; ++i)
        gr.edges.push_back({saddle_ids[next_saddle++], "piece_0", extra_b});

    check_graph_consistency(p, gr);
    return gr;
}

} // namespace msd
