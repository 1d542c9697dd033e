#pragma once

#include "msdecomp/cut.hpp"
#include "msdecomp/morse.hpp"
#include "msdecomp/portrait.hpp"
#include "msdecomp/projective.hpp"
#include "msdecomp/realization.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace msd {

/// A scenario file: the portrait plus, optionally, the cut multigraph.
struct Scenario {
    OrbitPortrait portrait;
    std::optional<PortraitGraph> graph;

    bool operator==(const Scenario&) const = default;
};

/// Parses UTF-8 JSON against the strict scenario schema (unknown fields are
/// rejected, every violation names the offending field, syntax errors carry
/// line/column). Throws schema_error.
Scenario parse_scenario(const std::string& text);

/// Inverse of parse_scenario: parse_scenario(render_scenario(s)) == s.
std::string render_scenario(const Scenario& s);

const char* to_string(SystemKind k);
const char* to_string(OrbitKind k);
const char* to_string(BundleType b);

// Machine forms of the report payloads.
nlohmann::json to_json(const Violation& v);
nlohmann::json to_json(const ValidationReport& r);
nlohmann::json to_json(const OrbitCounts& c);
nlohmann::json to_json(const GenusResult& r);
nlohmann::json to_json(const MorseReport& r);
nlohmann::json to_json(const Conclusion& c);
nlohmann::json to_json(const Claim& c);
nlohmann::json to_json(const PolarPiece& piece);
nlohmann::json to_json(const ConnectedSumExpr& e);
nlohmann::json to_json(const CutRecord& r);
nlohmann::json to_json(const Decomposition& d);
nlohmann::json to_json(const ProjectiveReport& r);
nlohmann::json to_json(const PlanStep& s);
nlohmann::json to_json(const RealizationPlan& plan);

} // namespace msd
