#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctxsim/lp.hpp"
#include "ctxsim/morphism.hpp"

namespace ctxsim {

struct NoncontextualityResult {
  bool noncontextual = false;
  std::optional<SectionDist> global;  // explaining distribution when noncontextual
};

// Over the nonnegative rationals this is the feasibility LP in variables
// b(g) >= 0 over global sections with equality rows per (context, section).
// Over the booleans it is decided by per-supported-section extension search.
// Signed-rational models are always non-contextual; a signed witness is
// produced by solving the linear system directly.
NoncontextualityResult is_noncontextual(const EmpiricalModel& e);

struct NcfResult {
  Rational ncf;
  Rational cf;
  std::optional<EmpiricalModel> noncontextual_part;  // present when ncf > 0
  std::optional<EmpiricalModel> contextual_part;     // present when ncf < 1
};

// Non-contextual fraction: maximize sum b(g) subject to the subnormalized
// domination rows sum_{g|C=s} b(g) <= e_C(s). NonNegRational models only.
NcfResult ncf(const EmpiricalModel& e);

struct StrongContextualityResult {
  bool strongly_contextual = false;
  std::optional<Section> witness;  // consistent global section when not SC
};
StrongContextualityResult is_strongly_contextual(const EmpiricalModel& e);

// Decided on the possibilistic collapse. NonNegRational models only.
bool is_logically_contextual(const EmpiricalModel& e);

// Backtracking search for a global section extending `seed` whose restriction
// to every context lies in that table's support.
std::optional<Section> find_consistent_global(const EmpiricalModel& e, const Section& seed);

struct ContextualityReport {
  std::optional<bool> noncontextual;
  std::optional<Rational> ncf_value;
  std::optional<Rational> cf_value;
  std::optional<bool> strongly_contextual;
  std::optional<bool> logically_contextual;
  std::optional<SectionDist> global_witness;
  std::optional<Section> consistent_global;
  std::optional<EmpiricalModel> noncontextual_part;
  std::optional<EmpiricalModel> contextual_part;
};

// checks ⊆ {"nc", "ncf", "sc", "lc"}.
ContextualityReport analyze(const EmpiricalModel& e, const std::set<std::string>& checks);

struct SearchBudget {
  std::optional<double> max_seconds;
  std::optional<std::size_t> max_relations;
};

struct SimSearchResult {
  enum class Status { found, none, budget_exceeded };
  Status status = Status::none;
  std::optional<Simulation> witness;
  std::size_t relations_examined = 0;
};

// Decides whether a stochastic simulation d -> e exists. Enumerates the
// inclusion-maximal simplicial relations pi from e's measurements into d's
// scenario (enlarging pi pointwise only adds information the components may
// ignore, so maximal relations suffice) and solves one feasibility LP per
// relation, in decreasing image-size order. Feasible solutions are rebuilt
// into a Morphism and re-verified before being returned.
SimSearchResult simulation_exists(const EmpiricalModel& d, const EmpiricalModel& e,
                                  const SearchBudget& budget = {});

// Exposed for tests.
std::vector<RelationImage> maximal_simplicial_relations(const Scenario& target_x,
                                                        const Scenario& source_y,
                                                        const SearchBudget& budget,
                                                        bool* budget_exceeded);

struct SimulationLp {
  LinearProgram lp;
  std::vector<std::pair<Section, Section>> vars;  // (input over pi(X), global output)
  Face input_domain;                              // pi(X)
};

// Feasibility LP for a fixed relation, in the variables of the component at
// the full target measurement set: normalization rows per input, locality
// rows tying inputs that differ at a single source measurement, and exact
// pushforward rows per target context.
SimulationLp build_simulation_lp(const EmpiricalModel& d, const EmpiricalModel& e,
                                 const RelationImage& pi);

}  // namespace ctxsim
