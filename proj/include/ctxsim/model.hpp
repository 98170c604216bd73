#pragma once

#include <map>
#include <string>
#include <vector>

#include "ctxsim/distribution.hpp"
#include "ctxsim/scenario.hpp"

namespace ctxsim {

using SectionDist = Dist<Section>;

struct ModelData {
  Scenario scenario;
  Semifield tag = Semifield::nonneg_rational;
  std::map<Face, std::map<Section, Value>> tables;  // raw weights, validated below
};

std::vector<Issue> validate_model_data(const ModelData& data);

// A no-signalling empirical model: one distribution over C-sections per cover
// member C, agreeing on overlaps. Compatibility is enforced at construction.
class EmpiricalModel {
 public:
  explicit EmpiricalModel(ModelData data);
  EmpiricalModel(Scenario scenario, Semifield tag, std::map<Face, SectionDist> tables);

  const Scenario& scenario() const { return scenario_; }
  Semifield tag() const { return tag_; }
  const std::map<Face, SectionDist>& tables() const { return tables_; }
  const SectionDist& table(const Face& context) const;  // missing_table

  // e|_U for a face U; independent of the covering context by compatibility.
  SectionDist marginal(const Face& U) const;  // not_a_face

  bool operator==(const EmpiricalModel& rhs) const {
    return scenario_ == rhs.scenario_ && tag_ == rhs.tag_ && tables_ == rhs.tables_;
  }
  bool operator!=(const EmpiricalModel& rhs) const { return !(*this == rhs); }

 private:
  Scenario scenario_;
  Semifield tag_;
  std::map<Face, SectionDist> tables_;
};

// The unique model on the empty scenario.
EmpiricalModel terminal_model(Semifield tag);

EmpiricalModel restrict_model(const EmpiricalModel& e, const Face& keep);

// Per-measurement outcome relabelings; missing measurements mean identity,
// present maps must be total on that measurement's outcomes.
using OutcomeMaps = std::map<std::string, std::map<std::string, std::string>>;
EmpiricalModel coarse_grain(const EmpiricalModel& e, const OutcomeMaps& f);
Section apply_outcome_maps(const OutcomeMaps& f, const Section& s);

EmpiricalModel mix_models(const std::vector<std::pair<Value, EmpiricalModel>>& terms);
EmpiricalModel tensor_models(const EmpiricalModel& e, const EmpiricalModel& d);
EmpiricalModel collapse_model(const EmpiricalModel& e, const Hom& h);

// Renames measurements via a bijective map (labels outside the map are kept).
EmpiricalModel rename_measurements(const EmpiricalModel& e,
                                   const std::map<std::string, std::string>& names);

std::vector<std::string> zoo_names();
EmpiricalModel zoo_get(const std::string& name);  // unknown_model

}  // namespace ctxsim
