#include "ctxsim/lp.hpp"

#include <algorithm>

namespace ctxsim {

std::size_t LinearProgram::add_variable(std::string name, bool nonneg) {
  names_.push_back(std::move(name));
  nonneg_.push_back(nonneg);
  return names_.size() - 1;
}

void LinearProgram::add_constraint(std::map<std::size_t, Rational> coeffs, Cmp cmp, Rational rhs) {
  for (const auto& [idx, _] : coeffs)
    if (idx >= names_.size()) fail(Errc::internal_error, "constraint references unknown variable");
  rows_.push_back({std::move(coeffs), cmp, std::move(rhs)});
}

void LinearProgram::set_objective(std::map<std::size_t, Rational> coeffs) {
  for (const auto& [idx, _] : coeffs)
    if (idx >= names_.size()) fail(Errc::internal_error, "objective references unknown variable");
  objective_ = std::move(coeffs);
}

namespace {

// Dense simplex tableau over the standard form max c.z, Az = b, z >= 0.
struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;  // structural + artificial, excluding rhs
  std::size_t structural = 0;
  std::vector<std::vector<Rational>> t;  // rows x (cols + 1), last entry rhs
  std::vector<Rational> obj;             // reduced costs, length cols + 1 (value at end)
  std::vector<std::size_t> basis;        // per row
  std::vector<bool> dead_row;
  std::vector<bool> active_col;
  std::size_t pivots = 0;

  void pivot(std::size_t r, std::size_t e) {
    ++pivots;
    auto& row = t[r];
    const Rational inv = Rational(1) / row[e];
    for (auto& v : row) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || t[i][e] == 0) continue;
      const Rational factor = t[i][e];
      auto& other = t[i];
      for (std::size_t j = 0; j <= cols; ++j)
        if (row[j] != 0) other[j] -= factor * row[j];
    }
    if (obj[e] != 0) {
      const Rational factor = obj[e];
      for (std::size_t j = 0; j <= cols; ++j)
        if (row[j] != 0) obj[j] -= factor * row[j];
    }
    basis[r] = e;
  }

  // Returns false when no entering column exists (optimal).
  // Throws unbounded marker via out-parameter instead of exceptions.
  enum class Step { pivoted, optimal, unbounded };

  Step step(bool bland, std::size_t* unbounded_col) {
    std::size_t entering = cols;
    if (bland) {
      for (std::size_t j = 0; j < cols; ++j)
        if (active_col[j] && obj[j] > 0) {
          entering = j;
          break;
        }
    } else {
      const Rational* best = nullptr;
      for (std::size_t j = 0; j < cols; ++j)
        if (active_col[j] && obj[j] > 0 && (best == nullptr || obj[j] > *best)) {
          best = &obj[j];
          entering = j;
        }
    }
    if (entering == cols) return Step::optimal;

    std::size_t leave_row = rows;
    Rational best_ratio;
    for (std::size_t i = 0; i < rows; ++i) {
      if (dead_row[i] || t[i][entering] <= 0) continue;
      Rational ratio = t[i][cols] / t[i][entering];
      if (leave_row == rows || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave_row])) {
        leave_row = i;
        best_ratio = ratio;
      }
    }
    if (leave_row == rows) {
      *unbounded_col = entering;
      return Step::unbounded;
    }
    pivot(leave_row, entering);
    return Step::pivoted;
  }
};

constexpr int kStallLimit = 50;

// Runs the simplex loop; switches to Bland's rule permanently after
// kStallLimit pivots without objective improvement.
Tableau::Step run_simplex(Tableau& tab, std::size_t* unbounded_col) {
  bool bland = false;
  int stalled = 0;
  while (true) {
    const Rational before = tab.obj[tab.cols];
    auto step = tab.step(bland, unbounded_col);
    if (step != Tableau::Step::pivoted) return step;
    if (tab.obj[tab.cols] == before) {
      if (++stalled >= kStallLimit) bland = true;
    } else {
      stalled = 0;
    }
  }
}

}  // namespace

LpResult solve_lp_exact(const LinearProgram& lp) {
  const std::size_t n_user = lp.variable_count();
  const auto& rows = lp.constraints();
  const std::size_t m = rows.size();

  // Column layout: per user variable a positive column and, when free, a
  // negative column; then one slack/surplus per inequality row; then one
  // artificial per row.
  std::vector<std::size_t> pos_col(n_user), neg_col(n_user, SIZE_MAX);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n_user; ++i) {
    pos_col[i] = next++;
    if (!lp.variable_nonneg(i)) neg_col[i] = next++;
  }
  std::vector<std::size_t> slack_col(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i)
    if (rows[i].cmp != Cmp::eq) slack_col[i] = next++;
  const std::size_t structural = next;
  const std::size_t art0 = structural;

  Tableau tab;
  tab.rows = m;
  tab.cols = structural + m;
  tab.structural = structural;
  tab.t.assign(m, std::vector<Rational>(tab.cols + 1, Rational(0)));
  tab.basis.assign(m, 0);
  tab.dead_row.assign(m, false);
  tab.active_col.assign(tab.cols, true);

  std::vector<int> row_flip(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    auto& t = tab.t[i];
    for (const auto& [j, a] : rows[i].coeffs) {
      t[pos_col[j]] = a;
      if (neg_col[j] != SIZE_MAX) t[neg_col[j]] = -a;
    }
    if (rows[i].cmp == Cmp::le) t[slack_col[i]] = 1;
    if (rows[i].cmp == Cmp::ge) t[slack_col[i]] = -1;
    t[tab.cols] = rows[i].rhs;
    if (t[tab.cols] < 0) {
      row_flip[i] = -1;
      for (auto& v : t) v = -v;
    }
    t[art0 + i] = 1;
    tab.basis[i] = art0 + i;
  }

  LpResult result;

  // Phase 1: maximize minus the sum of artificials. Reduced costs of the
  // initial (artificial) basis: c_j + sum_i T[i][j].
  tab.obj.assign(tab.cols + 1, Rational(0));
  for (std::size_t j = 0; j <= tab.cols; ++j)
    for (std::size_t i = 0; i < m; ++i) tab.obj[j] += tab.t[i][j];
  for (std::size_t i = 0; i < m; ++i) tab.obj[art0 + i] -= 1;

  std::size_t unbounded_col = 0;
  auto phase1 = run_simplex(tab, &unbounded_col);
  if (phase1 == Tableau::Step::unbounded)
    fail(Errc::internal_error, "phase 1 cannot be unbounded");
  result.pivots = tab.pivots;

  // The objective row tracks -z in the rhs slot; phase-1 optimum below zero
  // (rhs entry above zero) means some artificial is stuck positive.
  if (tab.obj[tab.cols] > 0) {
    result.status = LpStatus::infeasible;
    // Row multipliers from the phase-1 duals, read off the reduced costs of
    // the artificial columns: y_std_i = -1 - rc(a_i), mapped back through the
    // row sign flips.
    result.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i)
      result.farkas[i] = Rational(row_flip[i]) * (Rational(-1) - tab.obj[art0 + i]);
    return result;
  }

  // Drive artificials out of the basis, marking redundant rows dead.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < art0 || tab.dead_row[i]) continue;
    std::size_t col = structural;
    for (std::size_t j = 0; j < structural; ++j)
      if (tab.t[i][j] != 0) {
        col = j;
        break;
      }
    if (col == structural)
      tab.dead_row[i] = true;
    else
      tab.pivot(i, col);
  }
  for (std::size_t j = art0; j < tab.cols; ++j) tab.active_col[j] = false;

  // Phase 2 objective.
  std::vector<Rational> cost(tab.cols, Rational(0));
  for (const auto& [j, c] : lp.objective()) {
    cost[pos_col[j]] = c;
    if (neg_col[j] != SIZE_MAX) cost[neg_col[j]] = -c;
  }
  tab.obj.assign(tab.cols + 1, Rational(0));
  for (std::size_t j = 0; j < tab.cols; ++j) tab.obj[j] = cost[j];
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.dead_row[i] || cost[tab.basis[i]] == 0) continue;
    const Rational c = cost[tab.basis[i]];
    for (std::size_t j = 0; j <= tab.cols; ++j)
      if (tab.t[i][j] != 0) tab.obj[j] -= c * tab.t[i][j];
  }
  // obj[rhs] now holds -objective value; keep that convention and negate at the end.

  auto phase2 = run_simplex(tab, &unbounded_col);
  result.pivots = tab.pivots;

  std::vector<Rational> z(tab.cols, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (!tab.dead_row[i]) z[tab.basis[i]] = tab.t[i][tab.cols];

  if (phase2 == Tableau::Step::unbounded) {
    result.status = LpStatus::unbounded;
    std::vector<Rational> dz(tab.cols, Rational(0));
    dz[unbounded_col] = 1;
    for (std::size_t i = 0; i < m; ++i)
      if (!tab.dead_row[i]) dz[tab.basis[i]] = -tab.t[i][unbounded_col];
    result.ray.resize(n_user);
    result.assignment.resize(n_user);
    for (std::size_t j = 0; j < n_user; ++j) {
      result.ray[j] = dz[pos_col[j]];
      result.assignment[j] = z[pos_col[j]];
      if (neg_col[j] != SIZE_MAX) {
        result.ray[j] -= dz[neg_col[j]];
        result.assignment[j] -= z[neg_col[j]];
      }
    }
    return result;
  }

  result.status = LpStatus::optimal;
  result.objective = -tab.obj[tab.cols];
  result.assignment.resize(n_user);
  for (std::size_t j = 0; j < n_user; ++j) {
    result.assignment[j] = z[pos_col[j]];
    if (neg_col[j] != SIZE_MAX) result.assignment[j] -= z[neg_col[j]];
  }
  return result;
}

// Certificate convention: y_i >= 0 on <=-rows, y_i <= 0 on >=-rows, free on
// =-rows. Then y.A x <= y.b for every feasible x. If additionally
// g = y.A satisfies g_j >= 0 for nonnegative variables and g_j = 0 for free
// ones while y.b < 0, feasibility would give 0 <= g.x <= y.b < 0.
bool verify_farkas(const LinearProgram& lp, const std::vector<Rational>& y) {
  const auto& rows = lp.constraints();
  if (y.size() != rows.size()) return false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].cmp == Cmp::le && y[i] < 0) return false;
    if (rows[i].cmp == Cmp::ge && y[i] > 0) return false;
  }
  std::map<std::size_t, Rational> agg;
  Rational rhs(0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (y[i] == 0) continue;
    for (const auto& [j, a] : rows[i].coeffs) agg[j] += y[i] * a;
    rhs += y[i] * rows[i].rhs;
  }
  for (const auto& [j, g] : agg) {
    if (lp.variable_nonneg(j)) {
      if (g < 0) return false;
    } else if (g != 0) {
      return false;
    }
  }
  return rhs < 0;
}

}  // namespace ctxsim
