#include "ctxsim/scenario.hpp"

#include <algorithm>

namespace ctxsim {

std::string face_to_string(const Face& f) {
  std::string out = "{";
  bool first = true;
  for (const auto& m : f) {
    if (!first) out += ",";
    out += m;
    first = false;
  }
  return out + "}";
}

bool is_subset(const Face& a, const Face& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Face face_union(const Face& a, const Face& b) {
  Face out = a;
  out.insert(b.begin(), b.end());
  return out;
}

Face face_intersection(const Face& a, const Face& b) {
  Face out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.begin()));
  return out;
}

Face face_difference(const Face& a, const Face& b) {
  Face out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.begin()));
  return out;
}

const Section& Section::empty() {
  static const Section e{};
  return e;
}

Face Section::domain() const {
  Face out;
  for (const auto& [m, _] : assignment_) out.insert(m);
  return out;
}

const std::string& Section::at(const std::string& m) const {
  auto it = assignment_.find(m);
  if (it == assignment_.end())
    fail(Errc::unknown_measurement, "section does not assign '" + m + "'");
  return it->second;
}

Section Section::restricted_to(const Face& U) const {
  std::map<std::string, std::string> out;
  for (const auto& m : U) {
    auto it = assignment_.find(m);
    if (it == assignment_.end())
      fail(Errc::not_subset, "'" + m + "' is outside the section's domain");
    out.emplace(m, it->second);
  }
  return Section(std::move(out));
}

Section Section::merged_with(const Section& other) const {
  std::map<std::string, std::string> out = assignment_;
  for (const auto& [m, o] : other.assignment_) {
    auto [it, fresh] = out.emplace(m, o);
    if (!fresh && it->second != o)
      fail(Errc::internal_error, "merging sections that disagree on '" + m + "'");
  }
  return Section(std::move(out));
}

Section Section::with(const std::string& m, const std::string& outcome) const {
  auto out = assignment_;
  out[m] = outcome;
  return Section(std::move(out));
}

std::string Section::to_string() const {
  std::string out = "(";
  bool first = true;
  for (const auto& [m, o] : assignment_) {
    if (!first) out += ", ";
    out += m + "=" + o;
    first = false;
  }
  return out + ")";
}

std::vector<Issue> validate_scenario_data(const ScenarioData& data) {
  std::vector<Issue> issues;
  for (const auto& [m, labels] : data.outcomes)
    if (labels.empty())
      issues.push_back({Errc::empty_outcome_set, "measurement '" + m + "' has no outcomes"});
  if (data.cover.empty()) {
    issues.push_back({Errc::cover_incomplete,
                      "cover is empty; the empty scenario has cover {∅}"});
    return issues;
  }
  Face covered;
  for (const auto& c : data.cover) {
    for (const auto& m : c) {
      if (!data.outcomes.count(m))
        issues.push_back({Errc::unknown_measurement,
                          "cover member " + face_to_string(c) + " mentions unknown '" + m + "'"});
      covered.insert(m);
    }
  }
  for (const auto& [m, _] : data.outcomes)
    if (!covered.count(m))
      issues.push_back({Errc::cover_incomplete, "measurement '" + m + "' is not covered"});
  for (const auto& c : data.cover)
    for (const auto& d : data.cover)
      if (c != d && is_subset(c, d)) {
        issues.push_back({Errc::not_antichain, "cover member " + face_to_string(c) +
                                                   " is contained in " + face_to_string(d)});
        break;
      }
  return issues;
}

Scenario::Scenario(ScenarioData data) : data_(std::move(data)) {
  // canonicalize outcome label lists
  for (auto& [m, labels] : data_.outcomes) {
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  }
  raise_first(validate_scenario_data(data_));
  for (const auto& [m, _] : data_.outcomes) measurements_.insert(m);
  cover_ = data_.cover;
}

Scenario Scenario::empty() { return Scenario({}, {Face{}}); }

const std::vector<std::string>& Scenario::outcomes(const std::string& m) const {
  auto it = data_.outcomes.find(m);
  if (it == data_.outcomes.end())
    fail(Errc::unknown_measurement, "no measurement '" + m + "'");
  return it->second;
}

bool Scenario::is_face(const Face& U) const {
  for (const auto& m : U)
    if (!data_.outcomes.count(m))
      fail(Errc::unknown_measurement, "no measurement '" + m + "'");
  if (U.empty()) return true;
  for (const auto& c : cover_)
    if (is_subset(U, c)) return true;
  return false;
}

std::set<Face> Scenario::faces() const {
  std::set<Face> out;
  out.insert(Face{});
  for (const auto& c : cover_) {
    // all subsets of c
    std::vector<std::string> elems(c.begin(), c.end());
    const std::size_t n = elems.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      Face f;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) f.insert(elems[i]);
      out.insert(std::move(f));
    }
  }
  return out;
}

std::vector<Section> Scenario::assignments_over(const Face& U) const {
  std::vector<const std::vector<std::string>*> label_sets;
  std::vector<std::string> names(U.begin(), U.end());
  for (const auto& m : names) label_sets.push_back(&outcomes(m));
  std::vector<Section> out;
  std::vector<std::size_t> idx(names.size(), 0);
  while (true) {
    std::map<std::string, std::string> a;
    for (std::size_t i = 0; i < names.size(); ++i) a.emplace(names[i], (*label_sets[i])[idx[i]]);
    out.emplace_back(std::move(a));
    // odometer, last measurement fastest
    std::size_t i = names.size();
    while (i > 0) {
      --i;
      if (++idx[i] < label_sets[i]->size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
    if (names.empty()) return out;
  }
}

std::vector<Section> Scenario::sections_over(const Face& U) const {
  if (!is_face(U)) fail(Errc::not_a_face, face_to_string(U) + " is not a face");
  return assignments_over(U);
}

std::set<Face> antichain_normalize(const std::set<Face>& sets) {
  std::set<Face> out;
  for (const auto& c : sets) {
    bool dominated = false;
    for (const auto& d : sets)
      if (c != d && is_subset(c, d)) {
        dominated = true;
        break;
      }
    if (!dominated) out.insert(c);
  }
  return out;
}

std::string tensor_tag_left(const std::string& name) { return "L:" + name; }
std::string tensor_tag_right(const std::string& name) { return "R:" + name; }

Scenario tensor_scenarios(const Scenario& s1, const Scenario& s2) {
  std::map<std::string, std::vector<std::string>> outcomes;
  for (const auto& [m, labels] : s1.data().outcomes) outcomes.emplace(tensor_tag_left(m), labels);
  for (const auto& [m, labels] : s2.data().outcomes) outcomes.emplace(tensor_tag_right(m), labels);
  std::set<Face> cover;
  for (const auto& c : s1.cover())
    for (const auto& d : s2.cover()) {
      Face joint;
      for (const auto& m : c) joint.insert(tensor_tag_left(m));
      for (const auto& m : d) joint.insert(tensor_tag_right(m));
      cover.insert(std::move(joint));
    }
  return Scenario(std::move(outcomes), std::move(cover));
}

Scenario restrict_scenario(const Scenario& s, const Face& keep) {
  std::map<std::string, std::vector<std::string>> outcomes;
  for (const auto& m : keep) outcomes.emplace(m, s.outcomes(m));
  std::set<Face> cover;
  for (const auto& c : s.cover()) cover.insert(face_intersection(c, keep));
  return Scenario(std::move(outcomes), antichain_normalize(cover));
}

std::set<std::string> graham_reducible_vertices(const Scenario& s) {
  std::set<std::string> out;
  for (const auto& m : s.measurements()) {
    int count = 0;
    for (const auto& c : s.cover())
      if (c.count(m)) ++count;
    if (count == 1) out.insert(m);
  }
  return out;
}

Scenario graham_reduce(const Scenario& s, const std::string& x) {
  if (!graham_reducible_vertices(s).count(x))
    fail(Errc::not_reducible, "'" + x + "' does not lie in exactly one cover member");
  std::map<std::string, std::vector<std::string>> outcomes = s.data().outcomes;
  outcomes.erase(x);
  std::set<Face> cover;
  for (auto c : s.cover()) {
    c.erase(x);
    cover.insert(std::move(c));
  }
  return Scenario(std::move(outcomes), antichain_normalize(cover));
}

Acyclicity is_acyclic(const Scenario& s) {
  Acyclicity result;
  Scenario current = s;
  while (!current.measurements().empty()) {
    auto reducible = graham_reducible_vertices(current);
    if (reducible.empty()) return result;  // stuck: cyclic
    const std::string& x = *reducible.begin();
    result.order.push_back(x);
    current = graham_reduce(current, x);
  }
  result.acyclic = true;
  return result;
}

Face relation_image(const RelationImage& pi, const Face& U) {
  Face out;
  for (const auto& x : U) {
    auto it = pi.find(x);
    if (it == pi.end()) fail(Errc::unknown_measurement, "relation undefined on '" + x + "'");
    out.insert(it->second.begin(), it->second.end());
  }
  return out;
}

std::vector<Issue> validate_relation(const RelationImage& pi, const Scenario& from_x,
                                     const Scenario& to_y) {
  std::vector<Issue> issues;
  for (const auto& x : from_x.measurements())
    if (!pi.count(x)) {
      issues.push_back({Errc::unknown_measurement, "relation undefined on '" + x + "'"});
      return issues;
    }
  for (const auto& [x, image] : pi) {
    if (!from_x.has_measurement(x)) {
      issues.push_back({Errc::unknown_measurement, "relation defined on unknown '" + x + "'"});
      continue;
    }
    for (const auto& y : image)
      if (!to_y.has_measurement(y))
        issues.push_back({Errc::unknown_measurement,
                          "image of '" + x + "' mentions unknown '" + y + "'"});
  }
  if (!issues.empty()) return issues;
  for (const auto& c : from_x.cover()) {
    Face img = relation_image(pi, c);
    if (!to_y.is_face(img))
      issues.push_back({Errc::not_simplicial, "image " + face_to_string(img) + " of context " +
                                                  face_to_string(c) + " is not a face"});
  }
  return issues;
}

RelationImage identity_relation(const Scenario& s) {
  RelationImage pi;
  for (const auto& m : s.measurements()) pi[m] = {m};
  return pi;
}

RelationImage compose_relations(const RelationImage& pi_first, const RelationImage& pi_second) {
  RelationImage out;
  for (const auto& [x, mids] : pi_second) {
    Face img;
    for (const auto& y : mids) {
      auto it = pi_first.find(y);
      if (it == pi_first.end())
        fail(Errc::unknown_measurement, "relation composition undefined on '" + y + "'");
      img.insert(it->second.begin(), it->second.end());
    }
    out.emplace(x, std::move(img));
  }
  return out;
}

}  // namespace ctxsim
