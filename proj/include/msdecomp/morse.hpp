#pragma once

#include "msdecomp/portrait.hpp"

#include <optional>
#include <string>
#include <vector>

namespace msd {

/// Result of the genus computation g = (nu - mu + 2)/2, k = (mu + nu)/2.
/// Exact integer arithmetic. When parity_ok is false (mu + nu odd) g and k
/// are meaningless; g < 0 with parity_ok set means no closed manifold
/// supports the given counts.
struct GenusResult {
    int g = 0;
    int k = 0;
    bool parity_ok = false;

    bool valid() const { return parity_ok && g >= 0; }
};

/// Requires mu >= 2, nu >= 0.
GenusResult genus(int mu, int nu);

/// M_j = number of periodic points whose stable Morse index equals
/// j = dim W^s = n - unstable_dim. Point counts, period-weighted.
std::vector<int> morse_counts(const OrbitPortrait& p);

struct MorseReport {
    std::vector<int> counts; // M_0 .. M_n
    std::vector<int> betti;  // beta_0 .. beta_n
    /// verdict m: sum_{i<=m} (-1)^{m-i} M_i >= sum_{i<=m} (-1)^{m-i} beta_i
    std::vector<bool> inequality_verdicts;
    /// alternating sums of counts and betti agree
    bool euler_ok = false;

    bool all_pass() const;
};

/// Both lists must have length n+1.
MorseReport check_morse_inequalities(const std::vector<int>& counts,
                                     const std::vector<int>& betti);

enum class CorollaryVerdict {
    MustExistHeteroclinic,
    MustHavePeriodicTrajectory,
    Inconclusive,
};

struct Conclusion {
    CorollaryVerdict verdict = CorollaryVerdict::Inconclusive;
    std::string statement;
};

/// For an orientable diffeomorphism portrait with g >= 1: if pi_1 of the
/// ambient manifold contains no free product of g copies of Z, some saddle
/// of Morse index 1 and some saddle of Morse index n-1 must have intersecting
/// invariant manifolds. One-directional: a large (or unknown) free rank
/// yields Inconclusive, never a negative claim. Throws precondition_error
/// when g < 1.
Conclusion corollary_heteroclinic(int g, std::optional<int> pi1_free_rank);

/// Flow mirror: under the same free-rank hypothesis a flow without
/// heteroclinic intersections must have a periodic trajectory.
Conclusion corollary_periodic_trajectory(int g, std::optional<int> pi1_free_rank);

} // namespace msd
