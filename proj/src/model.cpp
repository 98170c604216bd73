#include "ctxsim/model.hpp"

#include <algorithm>

namespace ctxsim {

namespace {

// Checks that the keys of `weights` are exactly sections over `context` with
// labels drawn from the scenario's outcome sets.
std::vector<Issue> check_section_space(const Scenario& s, const Face& context,
                                       const std::map<Section, Value>& weights) {
  std::vector<Issue> issues;
  for (const auto& [section, _] : weights) {
    if (section.domain() != context) {
      issues.push_back({Errc::wrong_section_space,
                        "section " + section.to_string() + " is not over context " +
                            face_to_string(context)});
      continue;
    }
    for (const auto& [m, o] : section.assignment()) {
      const auto& labels = s.outcomes(m);
      if (std::find(labels.begin(), labels.end(), o) == labels.end())
        issues.push_back({Errc::wrong_section_space,
                          "'" + o + "' is not an outcome of '" + m + "'"});
    }
  }
  return issues;
}

std::vector<Issue> check_compatibility(const std::map<Face, SectionDist>& tables) {
  std::vector<Issue> issues;
  for (auto it = tables.begin(); it != tables.end(); ++it)
    for (auto jt = std::next(it); jt != tables.end(); ++jt) {
      Face shared = face_intersection(it->first, jt->first);
      auto left = it->second.map([&](const Section& s) { return s.restricted_to(shared); });
      auto right = jt->second.map([&](const Section& s) { return s.restricted_to(shared); });
      if (left != right) {
        // name one disagreeing section
        Section witness;
        for (const auto& [s, v] : left.weights())
          if (right.at(s) != v) {
            witness = s;
            break;
          }
        if (witness == Section() && !right.weights().empty())
          for (const auto& [s, v] : right.weights())
            if (left.at(s) != v) {
              witness = s;
              break;
            }
        issues.push_back({Errc::signalling,
                          "tables at " + face_to_string(it->first) + " and " +
                              face_to_string(jt->first) + " disagree at " + witness.to_string()});
      }
    }
  return issues;
}

}  // namespace

std::vector<Issue> validate_model_data(const ModelData& data) {
  std::vector<Issue> issues;
  std::map<Face, SectionDist> built;
  for (const auto& context : data.scenario.cover()) {
    auto it = data.tables.find(context);
    if (it == data.tables.end()) {
      issues.push_back({Errc::missing_table, "no table for context " + face_to_string(context)});
      continue;
    }
    auto space_issues = check_section_space(data.scenario, context, it->second);
    issues.insert(issues.end(), space_issues.begin(), space_issues.end());
    if (!space_issues.empty()) continue;
    try {
      built.emplace(context, SectionDist(data.tag, it->second));
    } catch (const Error& e) {
      issues.push_back({e.code(), "table at " + face_to_string(context) + ": " + e.what()});
    }
  }
  for (const auto& [context, _] : data.tables)
    if (!data.scenario.cover().count(context))
      issues.push_back({Errc::wrong_section_space,
                        face_to_string(context) + " is not a cover member"});
  if (issues.empty()) {
    auto compat = check_compatibility(built);
    issues.insert(issues.end(), compat.begin(), compat.end());
  }
  return issues;
}

EmpiricalModel::EmpiricalModel(ModelData data) : scenario_(data.scenario), tag_(data.tag) {
  raise_first(validate_model_data(data));
  for (const auto& [context, weights] : data.tables)
    tables_.emplace(context, SectionDist(tag_, weights));
}

EmpiricalModel::EmpiricalModel(Scenario scenario, Semifield tag,
                               std::map<Face, SectionDist> tables)
    : scenario_(std::move(scenario)), tag_(tag), tables_(std::move(tables)) {
  for (const auto& context : scenario_.cover())
    if (!tables_.count(context))
      fail(Errc::missing_table, "no table for context " + face_to_string(context));
  for (const auto& [context, dist] : tables_) {
    if (!scenario_.cover().count(context))
      fail(Errc::wrong_section_space, face_to_string(context) + " is not a cover member");
    if (dist.tag() != tag_) fail(Errc::instance_mismatch, "table tag differs from model tag");
    for (const auto& [section, _] : dist.weights())
      if (section.domain() != context)
        fail(Errc::wrong_section_space, "section " + section.to_string() +
                                            " is not over context " + face_to_string(context));
  }
  raise_first(check_compatibility(tables_));
}

const SectionDist& EmpiricalModel::table(const Face& context) const {
  auto it = tables_.find(context);
  if (it == tables_.end())
    fail(Errc::missing_table, "no table for context " + face_to_string(context));
  return it->second;
}

SectionDist EmpiricalModel::marginal(const Face& U) const {
  if (!scenario_.is_face(U)) fail(Errc::not_a_face, face_to_string(U) + " is not a face");
  for (const auto& [context, dist] : tables_)
    if (is_subset(U, context))
      return dist.map([&](const Section& s) { return s.restricted_to(U); });
  fail(Errc::internal_error, "face not covered");
}

EmpiricalModel terminal_model(Semifield tag) {
  std::map<Face, SectionDist> tables;
  tables.emplace(Face{}, SectionDist::unit(tag, Section::empty()));
  return EmpiricalModel(Scenario::empty(), tag, std::move(tables));
}

EmpiricalModel restrict_model(const EmpiricalModel& e, const Face& keep) {
  Scenario restricted = restrict_scenario(e.scenario(), keep);
  std::map<Face, SectionDist> tables;
  for (const auto& context : restricted.cover()) tables.emplace(context, e.marginal(context));
  return EmpiricalModel(std::move(restricted), e.tag(), std::move(tables));
}

Section apply_outcome_maps(const OutcomeMaps& f, const Section& s) {
  std::map<std::string, std::string> out;
  for (const auto& [m, o] : s.assignment()) {
    auto it = f.find(m);
    if (it == f.end()) {
      out.emplace(m, o);
      continue;
    }
    auto jt = it->second.find(o);
    if (jt == it->second.end())
      fail(Errc::partial_outcome_map, "map for '" + m + "' undefined on '" + o + "'");
    out.emplace(m, jt->second);
  }
  return Section(std::move(out));
}

EmpiricalModel coarse_grain(const EmpiricalModel& e, const OutcomeMaps& f) {
  std::map<std::string, std::vector<std::string>> outcomes;
  for (const auto& [m, labels] : e.scenario().data().outcomes) {
    auto it = f.find(m);
    if (it == f.end()) {
      outcomes.emplace(m, labels);
      continue;
    }
    std::vector<std::string> image;
    for (const auto& o : labels) {
      auto jt = it->second.find(o);
      if (jt == it->second.end())
        fail(Errc::partial_outcome_map, "map for '" + m + "' undefined on '" + o + "'");
      image.push_back(jt->second);
    }
    outcomes.emplace(m, std::move(image));
  }
  for (const auto& [m, _] : f)
    if (!e.scenario().has_measurement(m))
      fail(Errc::unknown_measurement, "outcome map for unknown '" + m + "'");
  Scenario scenario(std::move(outcomes), e.scenario().cover());
  std::map<Face, SectionDist> tables;
  for (const auto& [context, dist] : e.tables())
    tables.emplace(context, dist.map([&](const Section& s) { return apply_outcome_maps(f, s); }));
  return EmpiricalModel(std::move(scenario), e.tag(), std::move(tables));
}

EmpiricalModel mix_models(const std::vector<std::pair<Value, EmpiricalModel>>& terms) {
  if (terms.empty()) fail(Errc::weights_not_normalized, "empty mixture");
  const Scenario& scenario = terms.front().second.scenario();
  Semifield tag = terms.front().second.tag();
  for (const auto& [w, m] : terms) {
    if (m.scenario() != scenario) fail(Errc::scenario_mismatch, "mixture across scenarios");
    if (m.tag() != tag || w.tag() != tag) fail(Errc::instance_mismatch, "mixture across semifields");
  }
  std::map<Face, SectionDist> tables;
  for (const auto& context : scenario.cover()) {
    std::vector<std::pair<Value, SectionDist>> parts;
    for (const auto& [w, m] : terms) parts.emplace_back(w, m.table(context));
    tables.emplace(context, dist_convex(tag, parts));
  }
  return EmpiricalModel(scenario, tag, std::move(tables));
}

namespace {
Section tag_section_left(const Section& s) {
  std::map<std::string, std::string> out;
  for (const auto& [m, o] : s.assignment()) out.emplace(tensor_tag_left(m), o);
  return Section(std::move(out));
}

Section tag_section_right(const Section& s) {
  std::map<std::string, std::string> out;
  for (const auto& [m, o] : s.assignment()) out.emplace(tensor_tag_right(m), o);
  return Section(std::move(out));
}
}  // namespace

EmpiricalModel tensor_models(const EmpiricalModel& e, const EmpiricalModel& d) {
  if (e.tag() != d.tag()) fail(Errc::instance_mismatch, "tensor across semifields");
  Scenario scenario = tensor_scenarios(e.scenario(), d.scenario());
  std::map<Face, SectionDist> tables;
  for (const auto& c : e.scenario().cover())
    for (const auto& f : d.scenario().cover()) {
      Face joint;
      for (const auto& m : c) joint.insert(tensor_tag_left(m));
      for (const auto& m : f) joint.insert(tensor_tag_right(m));
      auto table = dist_product_merge(e.table(c), d.table(f), [](const Section& a, const Section& b) {
        return tag_section_left(a).merged_with(tag_section_right(b));
      });
      tables.emplace(std::move(joint), std::move(table));
    }
  return EmpiricalModel(std::move(scenario), e.tag(), std::move(tables));
}

EmpiricalModel collapse_model(const EmpiricalModel& e, const Hom& h) {
  if (e.tag() != h.source()) fail(Errc::instance_mismatch, "model is not over the hom's source");
  std::map<Face, SectionDist> tables;
  for (const auto& [context, dist] : e.tables()) {
    std::map<Section, Value> weights;
    for (const auto& [section, value] : dist.weights()) weights.emplace(section, h.apply(value));
    tables.emplace(context, SectionDist(h.target(), std::move(weights)));
  }
  return EmpiricalModel(e.scenario(), h.target(), std::move(tables));
}

EmpiricalModel rename_measurements(const EmpiricalModel& e,
                                   const std::map<std::string, std::string>& names) {
  auto rename = [&](const std::string& m) {
    auto it = names.find(m);
    return it == names.end() ? m : it->second;
  };
  std::map<std::string, std::vector<std::string>> outcomes;
  for (const auto& [m, labels] : e.scenario().data().outcomes) {
    auto [_, fresh] = outcomes.emplace(rename(m), labels);
    if (!fresh) fail(Errc::internal_error, "measurement renaming is not injective");
  }
  std::set<Face> cover;
  auto rename_face = [&](const Face& f) {
    Face out;
    for (const auto& m : f) out.insert(rename(m));
    return out;
  };
  for (const auto& c : e.scenario().cover()) cover.insert(rename_face(c));
  Scenario scenario(std::move(outcomes), std::move(cover));
  std::map<Face, SectionDist> tables;
  for (const auto& [context, dist] : e.tables())
    tables.emplace(rename_face(context), dist.map([&](const Section& s) {
      std::map<std::string, std::string> a;
      for (const auto& [m, o] : s.assignment()) a.emplace(rename(m), o);
      return Section(std::move(a));
    }));
  return EmpiricalModel(std::move(scenario), e.tag(), std::move(tables));
}

}  // namespace ctxsim
