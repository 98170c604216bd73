#pragma once

#include <map>
#include <string>
#include <vector>

#include "ctxsim/error.hpp"
#include "ctxsim/rational.hpp"

namespace ctxsim {

enum class Cmp { le, eq, ge };

struct LpConstraint {
  std::map<std::size_t, Rational> coeffs;  // variable index -> coefficient
  Cmp cmp = Cmp::eq;
  Rational rhs;
};

// Exact-rational linear program, maximization form.
class LinearProgram {
 public:
  // nonneg constrains the variable to x >= 0; otherwise it is free.
  std::size_t add_variable(std::string name, bool nonneg = true);
  void add_constraint(std::map<std::size_t, Rational> coeffs, Cmp cmp, Rational rhs);
  void set_objective(std::map<std::size_t, Rational> coeffs);  // maximize

  std::size_t variable_count() const { return names_.size(); }
  const std::string& variable_name(std::size_t i) const { return names_.at(i); }
  bool variable_nonneg(std::size_t i) const { return nonneg_.at(i); }
  const std::vector<LpConstraint>& constraints() const { return rows_; }
  const std::map<std::size_t, Rational>& objective() const { return objective_; }

 private:
  std::vector<std::string> names_;
  std::vector<bool> nonneg_;
  std::vector<LpConstraint> rows_;
  std::map<std::size_t, Rational> objective_;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational objective;
  std::vector<Rational> assignment;  // by variable index (optimal only)
  // Infeasibility certificate: row multipliers y, >= 0 on <=-rows, <= 0 on
  // >=-rows, free on =-rows, with y.A >= 0 on nonnegative variables,
  // y.A = 0 on free ones and y.b < 0. See verify_farkas.
  std::vector<Rational> farkas;
  // Unboundedness certificate: a feasible ray increasing the objective.
  std::vector<Rational> ray;
  std::size_t pivots = 0;
};

// Two-phase primal simplex on a dense rational tableau. Pivoting uses the
// largest-coefficient rule and switches to Bland's rule after a run of
// degenerate pivots, which guarantees termination.
LpResult solve_lp_exact(const LinearProgram& lp);

// True when y is a valid Farkas certificate of infeasibility for lp.
bool verify_farkas(const LinearProgram& lp, const std::vector<Rational>& y);

}  // namespace ctxsim
