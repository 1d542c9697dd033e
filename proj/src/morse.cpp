#include "msdecomp/morse.hpp"

#include "msdecomp/errors.hpp"

namespace msd {

GenusResult genus(int mu, int nu) {
    if (mu < 2) throw precondition_error("genus: mu must be >= 2, got " + std::to_string(mu));
    if (nu < 0) throw precondition_error("genus: nu must be >= 0, got " + std::to_string(nu));
    GenusResult result;
    result.parity_ok = (mu + nu) % 2 == 0;
    if (result.parity_ok) {
        result.g = (nu - mu + 2) / 2;
        result.k = (mu + nu) / 2;
    }
    return result;
}

std::vector<int> morse_counts(const OrbitPortrait& p) {
    std::vector<int> counts(static_cast<std::size_t>(p.dimension) + 1, 0);
    for (const auto& orbit : p.orbits) {
        const int stable_index = p.dimension - orbit.unstable_dim; // dim W^s
        counts[static_cast<std::size_t>(stable_index)] += orbit.period;
    }
    return counts;
}

bool MorseReport::all_pass() const {
    if (!euler_ok) return false;
    for (bool verdict : inequality_verdicts)
        if (!verdict) return false;
    return true;
}

MorseReport check_morse_inequalities(const std::vector<int>& counts,
                                     const std::vector<int>& betti) {
    if (counts.size() != betti.size())
        throw precondition_error("check_morse_inequalities: counts has length " +
                                 std::to_string(counts.size()) + " but betti has length " +
                                 std::to_string(betti.size()));
    if (counts.empty())
        throw precondition_error("check_morse_inequalities: empty input");

    MorseReport report;
    report.counts = counts;
    report.betti = betti;

    // D_m = sum_{i<=m} (-1)^{m-i} (M_i - beta_i), via D_m = (M_m - beta_m) - D_{m-1}.
    long long partial = 0;
    long long alternating = 0;
    int sign = 1;
    for (std::size_t m = 0; m < counts.size(); ++m) {
        const long long delta = static_cast<long long>(counts[m]) - betti[m];
        partial = delta - partial;
        report.inequality_verdicts.push_back(partial >= 0);
        alternating += sign * delta;
        sign = -sign;
    }
    report.euler_ok = alternating == 0;
    return report;
}

namespace {

Conclusion conclude(int g, std::optional<int> pi1_free_rank, CorollaryVerdict positive,
                    const char* positive_statement, const char* context) {
    if (g < 1)
        throw precondition_error(std::string(context) + ": requires g >= 1, got " +
                                 std::to_string(g));
    if (pi1_free_rank.has_value() && *pi1_free_rank < g)
        return {positive, positive_statement};
    if (pi1_free_rank.has_value())
        return {CorollaryVerdict::Inconclusive,
                "pi_1 may contain the free product of g copies of Z; no conclusion"};
    return {CorollaryVerdict::Inconclusive, "free rank of pi_1 unknown; no conclusion"};
}

} // namespace

Conclusion corollary_heteroclinic(int g, std::optional<int> pi1_free_rank) {
    return conclude(g, pi1_free_rank, CorollaryVerdict::MustExistHeteroclinic,
                    "there exist saddles p of Morse index 1 and q of Morse index n-1 with "
                    "W^s(p) intersecting W^u(q)",
                    "corollary_heteroclinic");
}

Conclusion corollary_periodic_trajectory(int g, std::optional<int> pi1_free_rank) {
    return conclude(g, pi1_free_rank, CorollaryVerdict::MustHavePeriodicTrajectory,
                    "the flow has a periodic trajectory", "corollary_periodic_trajectory");
}

} // namespace msd
