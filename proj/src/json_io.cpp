#include "ctxsim/json_io.hpp"

#include <fstream>
#include <sstream>

namespace ctxsim {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(Errc::parse_error, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json value_to_json(const Value& v) {
  if (v.tag() == Semifield::boolean) return v.as_bool();
  return rational_to_string(v.as_rational());
}

Value value_from_json(const Json& j, Semifield tag) {
  if (tag == Semifield::boolean) {
    if (!j.is_boolean()) bad("expected a JSON boolean, got " + j.dump());
    return Value::boolean(j.get<bool>());
  }
  if (j.is_string()) return Value::rational(tag, rational_from_string(j.get<std::string>()));
  if (j.is_number_integer()) return Value::rational(tag, Rational(j.get<long long>()));
  bad("expected a rational literal, got " + j.dump());
}

Json section_to_json(const Section& s) {
  Json out = Json::object();
  for (const auto& [m, o] : s.assignment()) out[m] = o;
  return out;
}

Section section_from_json(const Json& j) {
  if (!j.is_object()) bad("section must be an object, got " + j.dump());
  std::map<std::string, std::string> a;
  for (const auto& [m, o] : j.items()) {
    if (!o.is_string()) bad("outcome of '" + m + "' must be a string");
    a.emplace(m, o.get<std::string>());
  }
  return Section(std::move(a));
}

Json face_to_json(const Face& f) {
  Json out = Json::array();
  for (const auto& m : f) out.push_back(m);
  return out;
}

Face face_from_json(const Json& j) {
  if (!j.is_array()) bad("measurement set must be an array, got " + j.dump());
  Face out;
  for (const auto& m : j) {
    if (!m.is_string()) bad("measurement name must be a string");
    out.insert(m.get<std::string>());
  }
  return out;
}

Json scenario_to_json(const Scenario& s) {
  Json measurements = Json::object();
  for (const auto& [m, labels] : s.data().outcomes) measurements[m] = labels;
  Json cover = Json::array();
  for (const auto& c : s.cover()) cover.push_back(face_to_json(c));
  return Json{{"measurements", measurements}, {"cover", cover}};
}

namespace {
ScenarioData scenario_data_from_json(const Json& j) {
  ScenarioData data;
  for (const auto& [m, labels] : field(j, "measurements").items()) {
    if (!labels.is_array()) bad("outcomes of '" + m + "' must be an array");
    std::vector<std::string> out;
    for (const auto& o : labels) {
      if (!o.is_string()) bad("outcome label must be a string");
      out.push_back(o.get<std::string>());
    }
    data.outcomes.emplace(m, std::move(out));
  }
  for (const auto& c : field(j, "cover")) data.cover.insert(face_from_json(c));
  return data;
}
}  // namespace

Scenario scenario_from_json(const Json& j) { return Scenario(scenario_data_from_json(j)); }

Json section_dist_to_json(const SectionDist& d) {
  Json support = Json::array();
  for (const auto& [s, v] : d.weights())
    support.push_back(Json{{"key", section_to_json(s)}, {"value", value_to_json(v)}});
  return Json{{"semifield", semifield_name(d.tag())}, {"support", support}};
}

SectionDist section_dist_from_json(const Json& j) {
  Semifield tag = semifield_from_name(field(j, "semifield").get<std::string>());
  std::map<Section, Value> weights;
  for (const auto& entry : field(j, "support"))
    weights.emplace(section_from_json(field(entry, "key")),
                    value_from_json(field(entry, "value"), tag));
  return SectionDist(tag, std::move(weights));
}

Json model_to_json(const EmpiricalModel& e) {
  Json tables = Json::array();
  for (const auto& [context, dist] : e.tables()) {
    Json rows = Json::array();
    for (const auto& [s, p] : dist.weights())
      rows.push_back(Json{{"s", section_to_json(s)}, {"p", value_to_json(p)}});
    tables.push_back(Json{{"context", face_to_json(context)}, {"dist", rows}});
  }
  return Json{{"scenario", scenario_to_json(e.scenario())},
              {"semifield", semifield_name(e.tag())},
              {"tables", tables}};
}

namespace {

ModelData model_data_from_json(const Json& j) {
  ModelData data{scenario_from_json(field(j, "scenario")),
                 semifield_from_name(field(j, "semifield").get<std::string>()),
                 {}};
  for (const auto& entry : field(j, "tables")) {
    Face context = face_from_json(field(entry, "context"));
    std::map<Section, Value> weights;
    for (const auto& row : field(entry, "dist")) {
      auto [it, fresh] = weights.emplace(section_from_json(field(row, "s")),
                                         value_from_json(field(row, "p"), data.tag));
      if (!fresh) bad("duplicate section " + it->first.to_string() + " in a table");
    }
    if (!data.tables.emplace(std::move(context), std::move(weights)).second)
      bad("duplicate table for one context");
  }
  return data;
}

struct MorphismJsonParts {
  MorphismParts parts;
  std::map<Face, std::map<Section, std::map<Section, Value>>> listed;  // per listed face
};

MorphismJsonParts morphism_parts_from_json(const Json& j) {
  MorphismJsonParts out{MorphismParts{scenario_from_json(field(j, "source_scenario")),
                                      scenario_from_json(field(j, "target_scenario")),
                                      semifield_from_name(field(j, "semifield").get<std::string>()),
                                      {},
                                      {}},
                        {}};
  for (const auto& [x, img] : field(j, "pi").items()) out.parts.pi.emplace(x, face_from_json(img));
  for (const auto& entry : field(j, "components")) {
    Face face = face_from_json(field(entry, "face"));
    std::map<Section, std::map<Section, Value>> rows;
    for (const auto& row : field(entry, "rows")) {
      Section given = section_from_json(field(row, "given"));
      std::map<Section, Value> dist;
      for (const auto& cell : field(row, "dist"))
        dist.emplace(section_from_json(field(cell, "t")),
                     value_from_json(field(cell, "p"), out.parts.tag));
      if (!rows.emplace(std::move(given), std::move(dist)).second)
        bad("duplicate component row");
    }
    if (!out.listed.emplace(std::move(face), std::move(rows)).second)
      bad("duplicate component face entry");
  }
  return out;
}

// The listed per-face tables must exist for every face plus the full
// measurement set, and each must equal the family generated by the top entry.
std::vector<Issue> check_listed_components(const Morphism& m,
                                           const MorphismJsonParts& parsed) {
  std::vector<Issue> issues;
  std::set<Face> expected = m.target().faces();
  expected.insert(m.target().measurements());
  for (const auto& [face, _] : parsed.listed)
    if (!expected.count(face))
      issues.push_back({Errc::not_a_face,
                        "component listed for " + face_to_string(face) + ", which is not a face"});
  for (const auto& face : expected) {
    auto it = parsed.listed.find(face);
    if (it == parsed.listed.end()) {
      issues.push_back({Errc::missing_component, "no component entry for " + face_to_string(face)});
      continue;
    }
    auto derived = m.component_at(face);
    if (it->second.size() != derived.size()) {
      issues.push_back({Errc::missing_component,
                        "component at " + face_to_string(face) + " has wrong input count"});
      continue;
    }
    for (const auto& [given, dist] : it->second) {
      auto jt = derived.find(given);
      if (jt == derived.end()) {
        issues.push_back({Errc::missing_component, "component at " + face_to_string(face) +
                                                       " lists unexpected input " +
                                                       given.to_string()});
        continue;
      }
      try {
        if (SectionDist(m.tag(), dist) != jt->second)
          issues.push_back({Errc::naturality_violation,
                            "component at " + face_to_string(face) + ", input " +
                                given.to_string() +
                                " is not the marginal of the top component"});
      } catch (const Error& err) {
        issues.push_back({err.code(), std::string("component at ") + face_to_string(face) + ": " +
                                          err.what()});
      }
    }
  }
  return issues;
}

}  // namespace

Json morphism_to_json(const Morphism& m) {
  Json pi = Json::object();
  for (const auto& [x, img] : m.pi()) pi[x] = face_to_json(img);
  std::set<Face> listed = m.target().faces();
  listed.insert(m.target().measurements());
  Json components = Json::array();
  for (const auto& face : listed) {
    Json rows = Json::array();
    for (const auto& [given, dist] : m.component_at(face)) {
      Json cells = Json::array();
      for (const auto& [t, p] : dist.weights())
        cells.push_back(Json{{"t", section_to_json(t)}, {"p", value_to_json(p)}});
      rows.push_back(Json{{"given", section_to_json(given)}, {"dist", cells}});
    }
    components.push_back(Json{{"face", face_to_json(face)}, {"rows", rows}});
  }
  return Json{{"source_scenario", scenario_to_json(m.source())},
              {"target_scenario", scenario_to_json(m.target())},
              {"semifield", semifield_name(m.tag())},
              {"pi", pi},
              {"components", components}};
}

Morphism morphism_from_json(const Json& j) {
  auto parsed = morphism_parts_from_json(j);
  const Face top = parsed.parts.target.measurements();
  auto top_entry = parsed.listed.find(top);
  if (top_entry == parsed.listed.end())
    fail(Errc::missing_component,
         "no component entry for the full measurement set " + face_to_string(top));
  parsed.parts.kernel.domain = top;
  for (const auto& [given, dist] : top_entry->second)
    parsed.parts.kernel.table.emplace(given, SectionDist(parsed.parts.tag, dist));
  Morphism m(parsed.parts.source, parsed.parts.target, parsed.parts.tag, parsed.parts.pi,
             parsed.parts.kernel);
  raise_first(check_listed_components(m, parsed));
  return m;
}

Json report_to_json(const ContextualityReport& report) {
  Json out = Json::object();
  if (report.noncontextual) out["noncontextual"] = *report.noncontextual;
  if (report.ncf_value) out["ncf"] = rational_to_string(*report.ncf_value);
  if (report.cf_value) out["cf"] = rational_to_string(*report.cf_value);
  if (report.strongly_contextual) out["strongly_contextual"] = *report.strongly_contextual;
  if (report.logically_contextual) out["logically_contextual"] = *report.logically_contextual;
  if (report.global_witness) out["global_witness"] = section_dist_to_json(*report.global_witness);
  if (report.consistent_global)
    out["consistent_global"] = section_to_json(*report.consistent_global);
  if (report.noncontextual_part)
    out["noncontextual_part"] = model_to_json(*report.noncontextual_part);
  if (report.contextual_part) out["contextual_part"] = model_to_json(*report.contextual_part);
  return out;
}

Json simulation_to_json(const Simulation& sim) {
  return Json{{"morphism", morphism_to_json(sim.morphism)},
              {"source", model_to_json(sim.source)},
              {"target", model_to_json(sim.target)}};
}

EmpiricalModel model_from_json(const Json& j) { return EmpiricalModel(model_data_from_json(j)); }

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(Errc::parse_error, origin + ": " + e.what());
  }
}

std::vector<Issue> validate_artifact_json(const Json& j) {
  try {
    if (j.is_object() && j.contains("pi")) {
      morphism_from_json(j);  // first issue surfaces as an exception
      return {};
    }
    if (j.is_object() && j.contains("tables")) {
      auto data = model_data_from_json(j);
      return validate_model_data(data);
    }
    return validate_scenario_data(scenario_data_from_json(j));
  } catch (const Error& e) {
    return {{e.code(), e.what()}};
  }
}

EmpiricalModel load_model(const std::string& path_or_zoo) {
  if (path_or_zoo.rfind("zoo:", 0) == 0) return zoo_get(path_or_zoo.substr(4));
  std::ifstream in(path_or_zoo);
  if (!in) fail(Errc::io_error, "cannot open '" + path_or_zoo + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(parse_json_text(buffer.str(), path_or_zoo));
}

}  // namespace ctxsim
