#pragma once

#include <json.hpp>
#include <string>

#include "carleson/analytic_norms.hpp"
#include "carleson/box_tester.hpp"
#include "carleson/conformal.hpp"
#include "carleson/harmonic.hpp"
#include "carleson/open_sets.hpp"

namespace carleson {

using Json = nlohmann::json;

/// Parses text as JSON; SpecParseError carries a line:column diagnostic.
Json parse_json_text(const std::string& text, const std::string& origin = "<input>");
Json load_json_file(const std::string& path);

// spec formats
CircularDomain domain_from_json(const Json& j);
AtomicMeasure measure_from_json(const Json& j);
ConformalMap map_from_json(const Json& j);
PresentedDomain presented_from_json(const Json& j);
OpenSetDomain openset_from_json(const Json& j);

Json domain_to_json(const CircularDomain& domain);
Json measure_to_json(const AtomicMeasure& mu);
Json map_to_json(const ConformalMap& map);

// report formats
Json box_report_to_json(const BoxReport& report);
Json constant_estimate_to_json(const ConstantEstimate& estimate);
Json harmonic_estimate_to_json(const HarmonicEstimate& estimate);
Json trend_report_to_json(const TrendReport& trend);
Json component_report_to_json(const ComponentReport& report);
Json weighted_criterion_to_json(const WeightedCriterionReport& report);

/// Writes text through a temporary file in the same directory, then renames.
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace carleson
