#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctxsim/model.hpp"

namespace ctxsim {

// A natural family of stochastic outcome-translation maps over the subsets of
// `domain`, represented by its component at `domain` itself: the power set has
// a top element, so naturality determines every other component as a marginal
// of this one. `table` maps each section over pi(domain) (in the morphism's
// source scenario) to a distribution over sections of `domain`.
struct ComponentFamily {
  Face domain;
  std::map<Section, SectionDist> table;
};

// Stochastic morphism between scenarios: a simplicial relation pi from the
// target's measurements to subsets of the source's measurements, plus the
// component family over the full target measurement set. A morphism is valid
// when pi is simplicial, the family is total and normalized, and the marginal
// of the top component on any U depends only on the input restricted to
// pi(U) — the representation of naturality (see component_at).
class Morphism {
 public:
  Morphism(Scenario source, Scenario target, Semifield tag, RelationImage pi,
           ComponentFamily kernel);  // throws on the first validation issue

  const Scenario& source() const { return source_; }
  const Scenario& target() const { return target_; }
  Semifield tag() const { return tag_; }
  const RelationImage& pi() const { return pi_; }
  const ComponentFamily& kernel() const { return kernel_; }

  Face pi_image(const Face& U) const { return relation_image(pi_, U); }

  // The component at an arbitrary subset U of the target measurements:
  // inputs are sections over pi(U), outputs distributions over U-sections.
  std::map<Section, SectionDist> component_at(const Face& U) const;

  bool is_deterministic() const;  // every output a point distribution

  bool operator==(const Morphism& rhs) const {
    return source_ == rhs.source_ && target_ == rhs.target_ && tag_ == rhs.tag_ &&
           pi_ == rhs.pi_ && kernel_.domain == rhs.kernel_.domain &&
           kernel_.table == rhs.kernel_.table;
  }
  bool operator!=(const Morphism& rhs) const { return !(*this == rhs); }

 private:
  Scenario source_;
  Scenario target_;
  Semifield tag_;
  RelationImage pi_;
  ComponentFamily kernel_;
};

struct MorphismParts {
  Scenario source;
  Scenario target;
  Semifield tag = Semifield::nonneg_rational;
  RelationImage pi;
  ComponentFamily kernel;
};

std::vector<Issue> validate_morphism_parts(const MorphismParts& parts);
inline std::vector<Issue> validate_morphism(const Morphism& m) {
  return validate_morphism_parts({m.source(), m.target(), m.tag(), m.pi(), m.kernel()});
}

// sigma_* d: for each target context C, marginalize d at pi(C) and push it
// through the component at C.
EmpiricalModel pushforward(const Morphism& m, const EmpiricalModel& d);

struct SimulationCheck {
  bool ok = false;
  std::optional<Face> witness_context;  // first differing context on failure
};
SimulationCheck is_simulation(const Morphism& m, const EmpiricalModel& d,
                              const EmpiricalModel& e);

// A morphism together with models it provably maps between (pushforward of
// source equals target exactly; verified at construction).
struct Simulation {
  Morphism morphism;
  EmpiricalModel source;
  EmpiricalModel target;
};
Simulation make_simulation(Morphism m, EmpiricalModel d, EmpiricalModel e);

Morphism identity_morphism(const Scenario& s, Semifield tag);

// g after f; f's target scenario must equal g's source scenario. Relations
// compose setwise, components by Kleisli composition.
Morphism compose(const Morphism& g, const Morphism& f);

// Glues per-measurement deterministic parts sigma_x : E(pi(x)) -> O_x into a
// deterministic morphism (sheaf gluing; always natural).
using LocalParts = std::map<std::string, std::map<Section, std::string>>;
Morphism glue_local_deterministic(const Scenario& source, const Scenario& target, Semifield tag,
                                  const RelationImage& pi, const LocalParts& parts);

// Lemma-4 gluing along a partition (U1, U2) of the target measurements:
// the glued component at V is the product of the restricted components.
ComponentFamily glue_partition(const Scenario& source, const RelationImage& pi,
                               const ComponentFamily& f1, const ComponentFamily& f2,
                               const Face& all_target_measurements);

// Componentwise convex mixture of morphisms sharing the same relation.
Morphism mix_morphisms(const std::vector<std::pair<Value, Morphism>>& terms);

// Parallel composition: tagged disjoint union of relations, components glued
// over the left/right partition.
Morphism tensor_morphisms(const Morphism& m1, const Morphism& m2);

// e -> e|_Y along the inclusion-induced relation with identity components.
Simulation restriction_morphism(const EmpiricalModel& e, const Face& keep);

// e -> e/f with components Dirac ∘ f.
Simulation coarse_grain_morphism(const EmpiricalModel& e, const OutcomeMaps& f);

// 1 -> e from a distribution g on global sections with g|_C = e_C for all C
// (not_a_global_explanation naming the first failing context otherwise).
Simulation terminal_simulation(const EmpiricalModel& e, const SectionDist& global);

// e|_{X\{x}} -> e for a Graham-reducible x: the deleted measurement is
// reproduced from the conditional e_C(- | s) of its unique context, with a
// fixed fallback outcome outside the support (default: first outcome label).
Simulation graham_simulation(const EmpiricalModel& e, const std::string& x,
                             const std::optional<std::string>& fallback = std::nullopt);

// Lemma-3 factorization through the restriction to pi's total image.
std::pair<Simulation, Simulation> image_factorization(const Simulation& sim);

// The semifield-change functor on morphisms: relation kept, every component
// distribution mapped through the hom valuewise. Pairs with collapse_model.
Morphism collapse_morphism(const Morphism& m, const Hom& h);

}  // namespace ctxsim
