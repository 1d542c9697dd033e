#pragma once

#include "msdecomp/cut.hpp"
#include "msdecomp/portrait.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace msd::testing {

inline PeriodicOrbit make_sink(std::string id, int period = 1) {
    return {std::move(id), OrbitKind::Sink, 0, period};
}

inline PeriodicOrbit make_source(std::string id, int n, int period = 1) {
    return {std::move(id), OrbitKind::Source, n, period};
}

inline PeriodicOrbit make_saddle(std::string id, int unstable_dim, int period = 1) {
    return {std::move(id), OrbitKind::Saddle, unstable_dim, period};
}

inline OrbitPortrait north_south(int n) {
    OrbitPortrait p;
    p.dimension = n;
    p.orbits = {make_sink("omega"), make_source("alpha", n)};
    return p;
}

/// Sink + source + one saddle of the given unstable dimension.
inline OrbitPortrait three_point(int n, int k, SystemKind kind = SystemKind::Diffeomorphism) {
    OrbitPortrait p;
    p.dimension = n;
    p.system_kind = kind;
    p.orbits = {make_sink("omega"), make_source("alpha", n), make_saddle("sigma", k)};
    return p;
}

struct RandomCase {
    OrbitPortrait portrait;
    PortraitGraph graph;
    int mu = 0;
    int nu = 0;
    int k = 0;
};

/// A random admissible portrait (no heteroclinic edges) together with a
/// random connected multigraph consistent with its counts: k vertices with a
/// random spanning tree, the remaining edges placed anywhere (loops and
/// parallels included). Occasionally uses period-2 saddle orbits so counts
/// stay point-weighted.
inline RandomCase random_admissible_case(std::mt19937& rng, int max_nu) {
    RandomCase out;
    std::uniform_int_distribution<int> nu_dist(0, max_nu);
    const int nu = nu_dist(rng);

    // k ranges over [ceil((nu+2)/2), nu+1]: mu = 2k - nu >= 2 and the graph
    // can be connected (nu >= k - 1).
    const int k_min = (nu + 3) / 2;
    const int k_max = nu + 1;
    const int k = k_min >= k_max ? k_max : std::uniform_int_distribution<int>(k_min, k_max)(rng);
    const int mu = 2 * k - nu;

    const int n = std::uniform_int_distribution<int>(4, 8)(rng);
    OrbitPortrait& p = out.portrait;
    p.dimension = n;
    p.system_kind = SystemKind::Diffeomorphism;
    p.orientable = std::uniform_int_distribution<int>(0, 1)(rng) == 1;

    for (int i = 0; i < mu - 1; ++i) p.orbits.push_back(make_sink("w" + std::to_string(i)));
    p.orbits.push_back(make_source("alpha", n));

    // Codimension-one saddles, point count nu; sometimes one period-2 orbit.
    std::vector<std::string> edge_saddles;
    int remaining = nu;
    int index = 0;
    while (remaining > 0) {
        const bool pair_up = remaining >= 2 && std::uniform_int_distribution<int>(0, 3)(rng) == 0;
        const int period = pair_up ? 2 : 1;
        const int u = std::uniform_int_distribution<int>(0, 1)(rng) == 0 ? 1 : n - 1;
        const std::string id = "s" + std::to_string(index++);
        p.orbits.push_back(make_saddle(id, u, period));
        for (int point = 0; point < period; ++point) edge_saddles.push_back(id);
        remaining -= period;
    }

    // A few non-codimension-one saddle points, spread over the pieces.
    PortraitGraph& gr = out.graph;
    for (int i = 0; i < k; ++i) gr.vertices.push_back({"v" + std::to_string(i), {}});
    const int extras = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int i = 0; i < extras; ++i) {
        const int u = std::uniform_int_distribution<int>(2, n - 2)(rng);
        p.orbits.push_back(make_saddle("t" + std::to_string(i), u));
        const int vertex = std::uniform_int_distribution<int>(0, k - 1)(rng);
        gr.vertices[static_cast<std::size_t>(vertex)].saddle_inventory.push_back(u);
    }

    // Random spanning tree, then the remaining nu - (k-1) edges anywhere.
    std::vector<std::size_t> saddle_order(edge_saddles.size());
    for (std::size_t i = 0; i < saddle_order.size(); ++i) saddle_order[i] = i;
    std::shuffle(saddle_order.begin(), saddle_order.end(), rng);
    std::size_t next = 0;
    for (int i = 1; i < k; ++i) {
        const int parent = std::uniform_int_distribution<int>(0, i - 1)(rng);
        gr.edges.push_back({edge_saddles[saddle_order[next++]], "v" + std::to_string(parent),
                            "v" + std::to_string(i)});
    }
    while (next < edge_saddles.size()) {
        const int a = std::uniform_int_distribution<int>(0, k - 1)(rng);
        const int b = std::uniform_int_distribution<int>(0, k - 1)(rng);
        gr.edges.push_back({edge_saddles[saddle_order[next++]], "v" + std::to_string(a),
                            "v" + std::to_string(b)});
    }

    out.mu = mu;
    out.nu = nu;
    out.k = k;
    return out;
}

} // namespace msd::testing
