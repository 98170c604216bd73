#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ctxsim {

enum class Errc {
  // semifield / distribution
  zero_inverse,
  instance_mismatch,
  not_normalized,
  weights_not_normalized,
  conditioning_on_null,
  // scenario
  not_antichain,
  cover_incomplete,
  empty_outcome_set,
  unknown_measurement,
  not_a_face,
  not_subset,
  not_simplicial,
  not_reducible,
  // model
  missing_table,
  wrong_section_space,
  signalling,
  unknown_model,
  // morphism
  missing_component,
  naturality_violation,
  scenario_mismatch,
  relation_mismatch,
  not_a_partition,
  partial_local_part,
  partial_outcome_map,
  not_a_global_explanation,
  not_a_simulation,
  // analysis
  unsupported_semifield,
  budget_exceeded,
  // io
  parse_error,
  io_error,
  internal_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// One validation finding. Validation entry points collect these instead of
// throwing, so callers can report every offending member at once.
struct Issue {
  Errc code;
  std::string message;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) { throw Error(code, message); }

inline void raise_first(const std::vector<Issue>& issues) {
  if (!issues.empty()) throw Error(issues.front().code, issues.front().message);
}

}  // namespace ctxsim
