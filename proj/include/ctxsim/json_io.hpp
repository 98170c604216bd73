#pragma once

#include <json.hpp>

#include "ctxsim/analysis.hpp"

namespace ctxsim {

using Json = nlohmann::json;

Json value_to_json(const Value& v);
Value value_from_json(const Json& j, Semifield tag);

Json section_to_json(const Section& s);
Section section_from_json(const Json& j);

Json face_to_json(const Face& f);
Face face_from_json(const Json& j);

Json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const Json& j);

Json section_dist_to_json(const SectionDist& d);
SectionDist section_dist_from_json(const Json& j);

Json model_to_json(const EmpiricalModel& e);
EmpiricalModel model_from_json(const Json& j);

// Components are listed for every face of the target complex in canonical
// (sorted) order plus, when the full measurement set is not itself a face,
// one entry for it: that component generates the whole family.
Json morphism_to_json(const Morphism& m);
Morphism morphism_from_json(const Json& j);

Json report_to_json(const ContextualityReport& report);

Json simulation_to_json(const Simulation& sim);

// Parses text into JSON, wrapping parse failures into Error{parse_error}.
Json parse_json_text(const std::string& text, const std::string& origin);

// Structured validation for the CLI: detects the artifact kind by its keys
// ("tables" -> model, "pi" -> morphism, otherwise scenario) and returns every
// issue found instead of throwing on the first.
std::vector<Issue> validate_artifact_json(const Json& j);

// Accepts "zoo:<name>" wherever a model file path is expected.
EmpiricalModel load_model(const std::string& path_or_zoo);

}  // namespace ctxsim
