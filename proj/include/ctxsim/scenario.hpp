#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctxsim/error.hpp"

namespace ctxsim {

// A set of measurement names. Doubles as "context" and "face".
using Face = std::set<std::string>;

std::string face_to_string(const Face& f);
bool is_subset(const Face& a, const Face& b);
Face face_union(const Face& a, const Face& b);
Face face_intersection(const Face& a, const Face& b);
Face face_difference(const Face& a, const Face& b);

// An assignment of outcome labels to a finite set of measurements.
class Section {
 public:
  Section() = default;
  explicit Section(std::map<std::string, std::string> assignment)
      : assignment_(std::move(assignment)) {}

  static const Section& empty();

  const std::map<std::string, std::string>& assignment() const { return assignment_; }
  Face domain() const;
  bool defines(const std::string& m) const { return assignment_.count(m) != 0; }
  const std::string& at(const std::string& m) const;

  Section restricted_to(const Face& U) const;       // not_subset if U ⊄ domain
  Section merged_with(const Section& other) const;  // domains must be disjoint
  Section with(const std::string& m, const std::string& outcome) const;

  bool operator==(const Section& rhs) const { return assignment_ == rhs.assignment_; }
  bool operator!=(const Section& rhs) const { return !(*this == rhs); }
  bool operator<(const Section& rhs) const { return assignment_ < rhs.assignment_; }

  std::string to_string() const;

 private:
  std::map<std::string, std::string> assignment_;
};

inline Section restrict_section(const Section& t, const Face& U) { return t.restricted_to(U); }

struct ScenarioData {
  std::map<std::string, std::vector<std::string>> outcomes;  // measurement -> labels
  std::set<Face> cover;
};

std::vector<Issue> validate_scenario_data(const ScenarioData& data);

// Measurement scenario: measurements with finite nonempty outcome sets and an
// antichain cover. The pair (measurements, cover) is read as the simplicial
// complex generated by the cover; the empty set is a face of every scenario.
// The empty scenario is represented with cover {∅}.
class Scenario {
 public:
  explicit Scenario(ScenarioData data);  // throws on the first validation issue
  Scenario(std::map<std::string, std::vector<std::string>> outcomes, std::set<Face> cover)
      : Scenario(ScenarioData{std::move(outcomes), std::move(cover)}) {}

  static Scenario empty();

  const Face& measurements() const { return measurements_; }
  const std::set<Face>& cover() const { return cover_; }
  const std::vector<std::string>& outcomes(const std::string& m) const;
  bool has_measurement(const std::string& m) const { return data_.outcomes.count(m) != 0; }
  const ScenarioData& data() const { return data_; }

  bool is_face(const Face& U) const;  // unknown_measurement for names outside the scenario
  std::set<Face> faces() const;       // every subset of a cover member, including ∅

  // All assignments over a face, in canonical lexicographic order
  // (measurements sorted by name, outcome labels in sorted order).
  std::vector<Section> sections_over(const Face& U) const;  // not_a_face
  // Same, for an arbitrary subset of the measurements (no face requirement).
  std::vector<Section> assignments_over(const Face& U) const;

  bool operator==(const Scenario& rhs) const {
    return data_.outcomes == rhs.data_.outcomes && cover_ == rhs.cover_;
  }
  bool operator!=(const Scenario& rhs) const { return !(*this == rhs); }

 private:
  ScenarioData data_;
  Face measurements_;
  std::set<Face> cover_;
};

// Keeps only inclusion-maximal members.
std::set<Face> antichain_normalize(const std::set<Face>& sets);

// M*N = {C ⊔ D}; measurements tagged "L:" / "R:".
Scenario tensor_scenarios(const Scenario& s1, const Scenario& s2);
std::string tensor_tag_left(const std::string& name);
std::string tensor_tag_right(const std::string& name);

// Subscenario on `keep`: cover {C ∩ keep} re-normalized to an antichain.
Scenario restrict_scenario(const Scenario& s, const Face& keep);

// Measurements lying in exactly one cover member.
std::set<std::string> graham_reducible_vertices(const Scenario& s);
Scenario graham_reduce(const Scenario& s, const std::string& x);  // not_reducible

struct Acyclicity {
  bool acyclic = false;
  std::vector<std::string> order;  // witnessing deletion order when acyclic
};

// Greedy reduction, lexicographically smallest reducible vertex first.
Acyclicity is_acyclic(const Scenario& s);

// π: X -> P(Y), total on X's measurements. Simplicial when π(C) is a face of
// Y for every cover member C of X. Empty images are allowed.
using RelationImage = std::map<std::string, std::set<std::string>>;

Face relation_image(const RelationImage& pi, const Face& U);
std::vector<Issue> validate_relation(const RelationImage& pi, const Scenario& from_x,
                                     const Scenario& to_y);
RelationImage identity_relation(const Scenario& s);
// (pi_second ∘ pi_first)(x) = ∪_{y ∈ pi_second(x)} pi_first(y)
RelationImage compose_relations(const RelationImage& pi_first, const RelationImage& pi_second);

}  // namespace ctxsim
