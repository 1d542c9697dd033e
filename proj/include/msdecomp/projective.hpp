#pragma once

#include "msdecomp/cut.hpp"
#include "msdecomp/portrait.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace msd {

/// The dimension pairs (n, k) admitting a sphere fiber bundle
/// (S^{n-1}, S^k, S^{n-k-1}): the table is exhaustive.
constexpr std::array<std::pair<int, int>, 3> hopf_pairs() {
    return {{{4, 2}, {8, 4}, {16, 8}}};
}

constexpr bool is_hopf_pair(int n, int k) {
    for (auto [tn, tk] : hopf_pairs())
        if (tn == n && tk == k) return true;
    return false;
}

/// Outcome of the single-saddle analysis. When rejected, admissible is false
/// and rejection_reasons explains every failed gate; when accepted, the
/// decomposition has exactly one non-sphere piece N and structure_claims
/// carries the guaranteed properties of N.
struct ProjectiveReport {
    bool admissible = false;
    int n = 0;
    int k = 0; // unstable dim of the distinguished saddle
    int mu = 0;
    int nu = 0;
    int g = 0;
    ConnectedSumExpr decomposition;
    std::vector<Claim> structure_claims;
    std::vector<std::string> rejection_reasons;
};

/// Analyzes a portrait whose non-wandering set contains exactly one saddle
/// fixed point that is not codimension one. Accepts only even n with
/// k = n/2 and (n, k) in hopf_pairs(); rejects every 3-dimensional portrait
/// with exactly three fixed points. On acceptance emits
/// M = (S^{n-1} (x) S^1)^{# g} # N (or M = N when nu = mu - 2) together
/// with the ball/sphere partition, vanishing low homotopy, and the
/// projective-like claim (flows: all admitted n; diffeomorphisms: n = 8, 16).
ProjectiveReport analyze_single_saddle(const OrbitPortrait& p);

} // namespace msd
