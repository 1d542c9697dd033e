#include "msdecomp/projective.hpp"

#include "msdecomp/errors.hpp"
#include "msdecomp/morse.hpp"

#include <string>

namespace msd {

ProjectiveReport analyze_single_saddle(const OrbitPortrait& p) {
    ProjectiveReport report;
    report.n = p.dimension;
    auto reject = [&report](std::string reason) {
        report.rejection_reasons.push_back(std::move(reason));
    };

    const ValidationReport validation = validate_portrait(p);
    if (!validation.admissible()) {
        for (const auto& violation : validation.violations)
            reject("portrait inadmissible: " + violation.message);
        return report;
    }

    const OrbitCounts counts = orbit_counts(p);
    report.mu = counts.mu;
    report.nu = counts.nu;
    const int n = p.dimension;
    const int total_points = counts.mu + counts.nu + counts.other_saddles;

    if (n == 3 && total_points == 3)
        reject("a Morse-Smale system on a 3-manifold cannot have exactly three periodic points");

    // Locate the distinguished saddle: exactly one non-codimension-one saddle
    // point, i.e. a single fixed saddle orbit.
    const PeriodicOrbit* distinguished = nullptr;
    int distinguished_orbits = 0;
    for (const auto& orbit : p.orbits)
        if (orbit.kind == OrbitKind::Saddle && !is_codim_one(orbit, n)) {
            ++distinguished_orbits;
            distinguished = &orbit;
        }
    if (counts.other_saddles != 1 || distinguished_orbits != 1 || distinguished->period != 1) {
        reject("requires exactly one saddle fixed point that is not codimension one (found " +
               std::to_string(counts.other_saddles) + " such saddle points)");
        return report;
    }

    const int k = distinguished->unstable_dim;
    report.k = k;

    if (n % 2 != 0)
        reject("dimension " + std::to_string(n) + " is odd; the single-saddle case forces n even");
    else if (k != n / 2)
        reject("saddle unstable dimension " + std::to_string(k) + " must equal n/2 = " +
               std::to_string(n / 2));
    else if (!is_hopf_pair(n, k))
        reject("(n, k) = (" + std::to_string(n) + ", " + std::to_string(k) +
               ") admits no sphere fiber bundle (S^{n-1}, S^k, S^{n-k-1}); the admitted pairs "
               "are (4,2), (8,4), (16,8)");

    const GenusResult gen = genus(counts.mu, counts.nu);
    if (!gen.parity_ok)
        reject("mu + nu = " + std::to_string(counts.mu + counts.nu) + " is odd");
    else if (gen.g < 0)
        reject("genus (nu - mu + 2)/2 = " + std::to_string(gen.g) + " is negative");
    else
        report.g = gen.g;

    if (!report.rejection_reasons.empty()) return report;

    report.admissible = true;
    report.decomposition.g = gen.g;
    report.decomposition.bundle_types.assign(static_cast<std::size_t>(gen.g),
                                             BundleType::Unknown);
    report.decomposition.pieces.push_back({"N", {k}});

    const bool flow = p.system_kind == SystemKind::GradientLikeFlow;
    report.structure_claims.push_back(
        {"N is the disjoint union of an open " + std::to_string(n) + "-ball and a " +
             std::to_string(n / 2) + "-sphere",
         "ball-sphere-partition"});
    report.structure_claims.push_back(
        {"pi_1(N) = ... = pi_{" + std::to_string(n / 2 - 1) +
             "}(N) = 0; N is simply connected and orientable",
         "low-homotopy-vanishing"});
    if (flow || n == 8 || n == 16)
        report.structure_claims.push_back({"N is a projective-like manifold", "projective-like"});

    return report;
}

} // namespace msd
