#include "support/oracles.hpp"

#include <algorithm>
#include <set>

namespace ctxsim::oracle {

namespace {

std::optional<std::vector<Rational>> solve_square(const std::vector<std::vector<Rational>>& a,
                                                  const std::vector<Rational>& b) {
  const std::size_t n = b.size();
  std::vector<std::vector<Rational>> m = a;
  std::vector<Rational> rhs = b;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = n;
    for (std::size_t i = c; i < n; ++i)
      if (m[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel == n) return std::nullopt;  // singular
    std::swap(m[sel], m[c]);
    std::swap(rhs[sel], rhs[c]);
    const Rational inv = Rational(1) / m[c][c];
    for (auto& v : m[c]) v *= inv;
    rhs[c] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
      rhs[i] -= f * rhs[c];
    }
  }
  return rhs;
}

struct Row {
  std::vector<Rational> coeffs;
  Cmp cmp;
  Rational rhs;
};

std::vector<Row> dense_rows(const LinearProgram& lp) {
  const std::size_t n = lp.variable_count();
  std::vector<Row> rows;
  for (const auto& c : lp.constraints()) {
    Row r{std::vector<Rational>(n, Rational(0)), c.cmp, c.rhs};
    for (const auto& [j, a] : c.coeffs) r.coeffs[j] = a;
    rows.push_back(std::move(r));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!lp.variable_nonneg(j)) continue;
    Row r{std::vector<Rational>(n, Rational(0)), Cmp::ge, Rational(0)};
    r.coeffs[j] = 1;
    rows.push_back(std::move(r));
  }
  return rows;
}

bool satisfies(const std::vector<Row>& rows, const std::vector<Rational>& x) {
  for (const auto& r : rows) {
    Rational lhs(0);
    for (std::size_t j = 0; j < x.size(); ++j)
      if (r.coeffs[j] != 0) lhs += r.coeffs[j] * x[j];
    if (r.cmp == Cmp::eq && lhs != r.rhs) return false;
    if (r.cmp == Cmp::le && lhs > r.rhs) return false;
    if (r.cmp == Cmp::ge && lhs < r.rhs) return false;
  }
  return true;
}

}  // namespace

std::vector<std::vector<Rational>> polytope_vertices(const LinearProgram& lp) {
  const std::size_t n = lp.variable_count();
  auto rows = dense_rows(lp);
  std::set<std::vector<Rational>> found;
  if (n == 0) return {};

  std::vector<std::size_t> combo(n);
  // enumerate all n-subsets of rows
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  if (rows.size() < n) return {};
  while (true) {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (std::size_t i = 0; i < n; ++i) {
      a.push_back(rows[idx[i]].coeffs);
      b.push_back(rows[idx[i]].rhs);
    }
    auto x = solve_square(a, b);
    if (x && satisfies(rows, *x)) found.insert(*x);
    // next combination
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (idx[i] + (n - i) < rows.size()) {
        ++idx[i];
        for (std::size_t j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return {found.begin(), found.end()};
    }
  }
}

std::optional<Rational> vertex_optimum(const LinearProgram& lp) {
  auto vertices = polytope_vertices(lp);
  if (vertices.empty()) return std::nullopt;
  std::optional<Rational> best;
  for (const auto& v : vertices) {
    Rational val(0);
    for (const auto& [j, c] : lp.objective()) val += c * v[j];
    if (!best || val > *best) best = val;
  }
  return best;
}

Rational ncf_by_vertex_enumeration(const EmpiricalModel& e) {
  const auto globals = e.scenario().assignments_over(e.scenario().measurements());

  // zero-forcing: any global whose restriction hits a zero-probability
  // section is pinned to 0
  std::vector<bool> forced(globals.size(), false);
  for (std::size_t i = 0; i < globals.size(); ++i)
    for (const auto& context : e.scenario().cover())
      if (!e.table(context).contains(globals[i].restricted_to(context))) {
        forced[i] = true;
        break;
      }
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < globals.size(); ++i)
    if (!forced[i]) live.push_back(i);
  if (live.empty()) return Rational(0);

  LinearProgram reduced;
  for (std::size_t k = 0; k < live.size(); ++k) reduced.add_variable("b" + std::to_string(k));
  for (const auto& context : e.scenario().cover())
    for (const auto& s : e.scenario().sections_over(context)) {
      std::map<std::size_t, Rational> row;
      for (std::size_t k = 0; k < live.size(); ++k)
        if (globals[live[k]].restricted_to(context) == s) row[k] = 1;
      if (row.empty()) continue;
      Value p = e.table(context).at(s);
      reduced.add_constraint(std::move(row), Cmp::le,
                             p.is_zero() ? Rational(0) : p.as_rational());
    }
  std::map<std::size_t, Rational> objective;
  for (std::size_t k = 0; k < live.size(); ++k) objective[k] = 1;
  reduced.set_objective(std::move(objective));
  auto best = vertex_optimum(reduced);
  return best ? *best : Rational(0);
}

LinearProgram subset_variable_simulation_lp(const EmpiricalModel& d, const EmpiricalModel& e,
                                            const RelationImage& pi) {
  const Scenario& source = d.scenario();
  const Scenario& target = e.scenario();

  std::vector<Face> subsets;
  {
    std::vector<std::string> names(target.measurements().begin(), target.measurements().end());
    for (std::size_t mask = 0; mask < (std::size_t{1} << names.size()); ++mask) {
      Face u;
      for (std::size_t i = 0; i < names.size(); ++i)
        if (mask & (std::size_t{1} << i)) u.insert(names[i]);
      subsets.push_back(std::move(u));
    }
  }

  LinearProgram lp;
  std::map<Face, std::map<Section, std::map<Section, std::size_t>>> var;
  for (const auto& u : subsets) {
    const Face img = relation_image(pi, u);
    for (const auto& s : source.assignments_over(img))
      for (const auto& t : target.assignments_over(u))
        var[u][s][t] =
            lp.add_variable(face_to_string(u) + "|" + s.to_string() + "|" + t.to_string());
  }

  for (const auto& u : subsets)
    for (auto& [s, byt] : var.at(u)) {
      std::map<std::size_t, Rational> row;
      for (auto& [t, idx] : byt) row[idx] = 1;
      lp.add_constraint(std::move(row), Cmp::eq, Rational(1));
    }

  // codim-1 naturality: sigma_U(s|pi(U))(t) = sum_{t' restricting to t} sigma_V(s)(t')
  for (const auto& v : subsets) {
    if (v.empty()) continue;
    const Face img_v = relation_image(pi, v);
    for (const auto& x : v) {
      Face u = face_difference(v, Face{x});
      const Face img_u = relation_image(pi, u);
      for (const auto& s : source.assignments_over(img_v))
        for (const auto& t : target.assignments_over(u)) {
          std::map<std::size_t, Rational> row;
          row[var.at(u).at(s.restricted_to(img_u)).at(t)] += 1;
          for (const auto& [t2, idx] : var.at(v).at(s))
            if (t2.restricted_to(u) == t) row[idx] -= 1;
          lp.add_constraint(std::move(row), Cmp::eq, Rational(0));
        }
    }
  }

  for (const auto& context : target.cover()) {
    SectionDist marg = d.marginal(relation_image(pi, context));
    for (const auto& tc : target.sections_over(context)) {
      std::map<std::size_t, Rational> row;
      for (const auto& [sc, w] : marg.weights())
        row[var.at(context).at(sc).at(tc)] += w.as_rational();
      Value p = e.table(context).at(tc);
      lp.add_constraint(std::move(row), Cmp::eq, p.is_zero() ? Rational(0) : p.as_rational());
    }
  }
  return lp;
}

}  // namespace ctxsim::oracle
