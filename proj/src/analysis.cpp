#include "ctxsim/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <thread>

namespace ctxsim {

namespace {

Rational value_rational(const Value& v) { return v.is_zero() ? Rational(0) : v.as_rational(); }

struct GlobalLp {
  LinearProgram lp;
  std::vector<Section> globals;  // variable i <-> globals[i]
};

// Shared skeleton of the NC-decision and NCF programs: one variable per
// global section, one row per (context, section).
GlobalLp build_global_lp(const EmpiricalModel& e, Cmp cmp) {
  GlobalLp out;
  out.globals = e.scenario().assignments_over(e.scenario().measurements());
  for (std::size_t i = 0; i < out.globals.size(); ++i)
    out.lp.add_variable("b[" + out.globals[i].to_string() + "]", /*nonneg=*/true);
  for (const auto& context : e.scenario().cover()) {
    const auto& table = e.table(context);
    for (const auto& s : e.scenario().sections_over(context)) {
      std::map<std::size_t, Rational> row;
      for (std::size_t i = 0; i < out.globals.size(); ++i)
        if (out.globals[i].restricted_to(context) == s) row[i] = 1;
      out.lp.add_constraint(std::move(row), cmp, value_rational(table.at(s)));
    }
  }
  return out;
}

SectionDist dist_from_assignment(Semifield tag, const std::vector<Section>& globals,
                                 const std::vector<Rational>& b) {
  std::map<Section, Value> weights;
  for (std::size_t i = 0; i < globals.size(); ++i)
    if (b[i] != 0) weights.emplace(globals[i], Value::rational(tag, b[i]));
  return SectionDist(tag, std::move(weights));
}

// Exact Gaussian elimination; returns any solution of A x = rhs (free
// variables set to 0), or nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_linear_system(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> rhs) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a[0].size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t sel = m;
    for (std::size_t i = r; i < m; ++i)
      if (a[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel == m) continue;
    std::swap(a[sel], a[r]);
    std::swap(rhs[sel], rhs[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (auto& v : a[r]) v *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (rhs[i] != 0) return std::nullopt;
  std::vector<Rational> x(n, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
  return x;
}

// Depth-first extension of `assigned` over the remaining measurements,
// pruning with marginal supports.
std::optional<Section> extend_consistently(const EmpiricalModel& e, const Section& assigned,
                                           const std::vector<std::string>& remaining,
                                           std::size_t next) {
  Face dom = assigned.domain();
  for (const auto& context : e.scenario().cover()) {
    Face seen = face_intersection(context, dom);
    if (!e.marginal(seen).contains(assigned.restricted_to(seen))) return std::nullopt;
  }
  if (next == remaining.size()) return assigned;
  const std::string& m = remaining[next];
  for (const auto& o : e.scenario().outcomes(m)) {
    auto hit = extend_consistently(e, assigned.with(m, o), remaining, next + 1);
    if (hit) return hit;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Section> find_consistent_global(const EmpiricalModel& e, const Section& seed) {
  std::vector<std::string> remaining;
  for (const auto& m : e.scenario().measurements())
    if (!seed.defines(m)) remaining.push_back(m);
  return extend_consistently(e, seed, remaining, 0);
}

NoncontextualityResult is_noncontextual(const EmpiricalModel& e) {
  switch (e.tag()) {
    case Semifield::nonneg_rational: {
      auto built = build_global_lp(e, Cmp::eq);
      auto solved = solve_lp_exact(built.lp);
      if (solved.status != LpStatus::optimal) return {false, std::nullopt};
      return {true, dist_from_assignment(e.tag(), built.globals, solved.assignment)};
    }
    case Semifield::boolean: {
      std::map<Section, Value> support;
      for (const auto& context : e.scenario().cover())
        for (const auto& [s, _] : e.table(context).weights()) {
          auto g = find_consistent_global(e, s);
          if (!g) return {false, std::nullopt};
          support.emplace(*g, Value::boolean(true));
        }
      return {true, SectionDist(Semifield::boolean, std::move(support))};
    }
    case Semifield::signed_rational: {
      // Every no-signalling model has a signed global explanation; solve the
      // defining linear system directly.
      auto globals = e.scenario().assignments_over(e.scenario().measurements());
      std::vector<std::vector<Rational>> a;
      std::vector<Rational> rhs;
      for (const auto& context : e.scenario().cover()) {
        const auto& table = e.table(context);
        for (const auto& s : e.scenario().sections_over(context)) {
          std::vector<Rational> row(globals.size(), Rational(0));
          for (std::size_t i = 0; i < globals.size(); ++i)
            if (globals[i].restricted_to(context) == s) row[i] = 1;
          a.push_back(std::move(row));
          rhs.push_back(value_rational(table.at(s)));
        }
      }
      auto x = solve_linear_system(std::move(a), std::move(rhs));
      if (!x)
        fail(Errc::internal_error, "no signed global explanation for a no-signalling model");
      return {true, dist_from_assignment(e.tag(), globals, *x)};
    }
  }
  fail(Errc::internal_error, "unreachable");
}

NcfResult ncf(const EmpiricalModel& e) {
  if (e.tag() != Semifield::nonneg_rational)
    fail(Errc::unsupported_semifield, "non-contextual fraction needs a nonneg-rational model");
  auto built = build_global_lp(e, Cmp::le);
  std::map<std::size_t, Rational> objective;
  for (std::size_t i = 0; i < built.globals.size(); ++i) objective[i] = 1;
  built.lp.set_objective(std::move(objective));
  auto solved = solve_lp_exact(built.lp);
  if (solved.status != LpStatus::optimal)
    fail(Errc::internal_error, "NCF program is feasible (b = 0) and bounded by 1");
  NcfResult out{solved.objective, Rational(1) - solved.objective, std::nullopt, std::nullopt};

  const auto& scenario = e.scenario();
  auto table_of = [&](const Face& context, const Rational& scale, bool remainder) {
    std::map<Section, Value> weights;
    for (const auto& s : scenario.sections_over(context)) {
      Rational covered(0);
      for (std::size_t i = 0; i < built.globals.size(); ++i)
        if (solved.assignment[i] != 0 && built.globals[i].restricted_to(context) == s)
          covered += solved.assignment[i];
      Rational w = remainder ? (value_rational(e.table(context).at(s)) - covered) / scale
                             : covered / scale;
      if (w != 0) weights.emplace(s, Value::rational(e.tag(), w));
    }
    return SectionDist(e.tag(), std::move(weights));
  };
  if (out.ncf > 0) {
    std::map<Face, SectionDist> tables;
    for (const auto& context : scenario.cover())
      tables.emplace(context, table_of(context, out.ncf, false));
    out.noncontextual_part = EmpiricalModel(scenario, e.tag(), std::move(tables));
  }
  if (out.ncf < 1) {
    std::map<Face, SectionDist> tables;
    for (const auto& context : scenario.cover())
      tables.emplace(context, table_of(context, out.cf, true));
    out.contextual_part = EmpiricalModel(scenario, e.tag(), std::move(tables));
  }
  return out;
}

StrongContextualityResult is_strongly_contextual(const EmpiricalModel& e) {
  auto g = find_consistent_global(e, Section::empty());
  if (g) return {false, g};
  return {true, std::nullopt};
}

bool is_logically_contextual(const EmpiricalModel& e) {
  if (e.tag() != Semifield::nonneg_rational)
    fail(Errc::unsupported_semifield, "logical contextuality needs a nonneg-rational model");
  return !is_noncontextual(collapse_model(e, Hom::collapse_to_boolean())).noncontextual;
}

ContextualityReport analyze(const EmpiricalModel& e, const std::set<std::string>& checks) {
  for (const auto& c : checks)
    if (c != "nc" && c != "ncf" && c != "sc" && c != "lc")
      fail(Errc::parse_error, "unknown check '" + c + "'");
  ContextualityReport report;
  if (checks.count("nc")) {
    auto r = is_noncontextual(e);
    report.noncontextual = r.noncontextual;
    report.global_witness = r.global;
  }
  if (checks.count("ncf")) {
    auto r = ncf(e);
    report.ncf_value = r.ncf;
    report.cf_value = r.cf;
    report.noncontextual_part = r.noncontextual_part;
    report.contextual_part = r.contextual_part;
  }
  if (checks.count("sc")) {
    auto r = is_strongly_contextual(e);
    report.strongly_contextual = r.strongly_contextual;
    report.consistent_global = r.witness;
  }
  if (checks.count("lc")) report.logically_contextual = is_logically_contextual(e);
  return report;
}

namespace {

std::size_t relation_size(const RelationImage& pi) {
  std::size_t n = 0;
  for (const auto& [_, img] : pi) n += img.size();
  return n;
}

bool pointwise_subset(const RelationImage& a, const RelationImage& b) {
  for (const auto& [x, img] : a)
    if (!is_subset(img, b.at(x))) return false;
  return true;
}

struct Deadline {
  std::chrono::steady_clock::time_point end;
  bool armed = false;
  bool expired() const { return armed && std::chrono::steady_clock::now() > end; }
};

Deadline make_deadline(const SearchBudget& budget) {
  Deadline d;
  if (budget.max_seconds) {
    d.armed = true;
    d.end = std::chrono::steady_clock::now() +
            std::chrono::microseconds(static_cast<long long>(*budget.max_seconds * 1e6));
  }
  return d;
}

}  // namespace

std::vector<RelationImage> maximal_simplicial_relations(const Scenario& target_x,
                                                        const Scenario& source_y,
                                                        const SearchBudget& budget,
                                                        bool* budget_exceeded) {
  *budget_exceeded = false;
  Deadline deadline = make_deadline(budget);
  const std::vector<Face> contexts(target_x.cover().begin(), target_x.cover().end());
  const std::vector<Face> hosts(source_y.cover().begin(), source_y.cover().end());

  // Every simplicial relation is pointwise dominated by pi(x) = ∩_{C ∋ x} D_C
  // for some choice of host contexts D_C, so those candidates suffice.
  std::set<RelationImage> candidates;
  std::vector<std::size_t> choice(contexts.size(), 0);
  std::size_t enumerated = 0;
  while (true) {
    RelationImage pi;
    for (const auto& x : target_x.measurements()) {
      bool started = false;
      Face img;
      for (std::size_t i = 0; i < contexts.size(); ++i) {
        if (!contexts[i].count(x)) continue;
        if (!started) {
          img = hosts[choice[i]];
          started = true;
        } else {
          img = face_intersection(img, hosts[choice[i]]);
        }
      }
      pi.emplace(x, std::move(img));
    }
    candidates.insert(std::move(pi));
    if (++enumerated % 64 == 0 && deadline.expired()) {
      *budget_exceeded = true;
      break;
    }
    // odometer over host assignments
    std::size_t i = 0;
    for (; i < choice.size(); ++i) {
      if (++choice[i] < hosts.size()) break;
      choice[i] = 0;
    }
    if (i == choice.size()) break;
    if (choice.empty()) break;
  }

  std::vector<RelationImage> maximal;
  for (const auto& pi : candidates) {
    bool dominated = false;
    for (const auto& other : candidates)
      if (&other != &pi && pi != other && pointwise_subset(pi, other)) {
        dominated = true;
        break;
      }
    if (!dominated) maximal.push_back(pi);
  }
  std::sort(maximal.begin(), maximal.end(), [](const RelationImage& a, const RelationImage& b) {
    const std::size_t sa = relation_size(a), sb = relation_size(b);
    if (sa != sb) return sa > sb;
    return a < b;
  });
  return maximal;
}

SimulationLp build_simulation_lp(const EmpiricalModel& d, const EmpiricalModel& e,
                                 const RelationImage& pi) {
  SimulationLp out;
  const Scenario& source = d.scenario();
  const Scenario& target = e.scenario();
  out.input_domain = relation_image(pi, target.measurements());

  const auto inputs = source.assignments_over(out.input_domain);
  const auto globals = target.assignments_over(target.measurements());
  std::map<std::pair<Section, Section>, std::size_t> index;
  for (const auto& s : inputs)
    for (const auto& t : globals) {
      std::size_t idx = out.lp.add_variable("v[" + s.to_string() + "][" + t.to_string() + "]");
      index.emplace(std::make_pair(s, t), idx);
      out.vars.emplace_back(s, t);
    }

  // normalization per input
  for (const auto& s : inputs) {
    std::map<std::size_t, Rational> row;
    for (const auto& t : globals) row[index.at({s, t})] = 1;
    out.lp.add_constraint(std::move(row), Cmp::eq, Rational(1));
  }

  // locality: inputs differing only at y must marginalize equally on the
  // measurements whose image avoids y
  for (const auto& y : out.input_domain) {
    Face hidden;
    for (const auto& x : target.measurements())
      if (!pi.at(x).count(y)) hidden.insert(x);
    if (hidden.empty()) continue;
    for (const auto& s : inputs) {
      const std::string& seen = s.at(y);
      for (const auto& o : source.outcomes(y)) {
        if (o <= seen) continue;
        Section s_alt = s.with(y, o);
        for (const auto& u : target.assignments_over(hidden)) {
          std::map<std::size_t, Rational> row;
          for (const auto& t : globals) {
            if (t.restricted_to(hidden) != u) continue;
            row[index.at({s, t})] += 1;
            row[index.at({s_alt, t})] -= 1;
          }
          out.lp.add_constraint(std::move(row), Cmp::eq, Rational(0));
        }
      }
    }
  }

  // exact pushforward per context
  auto extend = [&](const Section& u) {
    Section s = u;
    for (const auto& m : face_difference(out.input_domain, u.domain()))
      s = s.with(m, source.outcomes(m).front());
    return s;
  };
  for (const auto& context : target.cover()) {
    SectionDist marg = d.marginal(relation_image(pi, context));
    for (const auto& tc : target.sections_over(context)) {
      std::map<std::size_t, Rational> row;
      for (const auto& [sc, weight] : marg.weights()) {
        const Section rep = extend(sc);
        const Rational w = value_rational(weight);
        for (const auto& t : globals)
          if (t.restricted_to(context) == tc) row[index.at({rep, t})] += w;
      }
      out.lp.add_constraint(std::move(row), Cmp::eq, value_rational(e.table(context).at(tc)));
    }
  }
  return out;
}

SimSearchResult simulation_exists(const EmpiricalModel& d, const EmpiricalModel& e,
                                  const SearchBudget& budget) {
  if (d.tag() != Semifield::nonneg_rational || e.tag() != Semifield::nonneg_rational)
    fail(Errc::unsupported_semifield, "simulation search needs nonneg-rational models");
  SimSearchResult result;
  Deadline deadline = make_deadline(budget);
  bool enum_exceeded = false;
  auto relations = maximal_simplicial_relations(e.scenario(), d.scenario(), budget, &enum_exceeded);
  if (enum_exceeded) {
    result.status = SimSearchResult::Status::budget_exceeded;
    return result;
  }
  // One independent LP per relation; batches solved in parallel, results
  // consumed in enumeration order so the first feasible relation wins
  // deterministically regardless of thread scheduling.
  const std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < relations.size(); start += workers) {
    if (deadline.expired() ||
        (budget.max_relations && result.relations_examined >= *budget.max_relations)) {
      result.status = SimSearchResult::Status::budget_exceeded;
      return result;
    }
    const std::size_t stop = std::min(relations.size(), start + workers);
    std::vector<std::future<std::pair<SimulationLp, LpResult>>> batch;
    for (std::size_t i = start; i < stop; ++i)
      batch.push_back(std::async(std::launch::async, [&, i]() {
        auto built = build_simulation_lp(d, e, relations[i]);
        auto solved = solve_lp_exact(built.lp);
        return std::make_pair(std::move(built), std::move(solved));
      }));
    for (std::size_t i = start; i < stop; ++i) {
      auto [built, solved] = batch[i - start].get();
      if (solved.status != LpStatus::optimal) {
        ++result.relations_examined;
        continue;
      }
      result.relations_examined = i + 1;
      std::map<Section, std::map<Section, Value>> kernel_weights;
      for (std::size_t v = 0; v < built.vars.size(); ++v) {
        if (solved.assignment[v] == 0) continue;
        kernel_weights[built.vars[v].first].emplace(
            built.vars[v].second, Value::rational(e.tag(), solved.assignment[v]));
      }
      ComponentFamily kernel{e.scenario().measurements(), {}};
      for (auto& [s, weights] : kernel_weights)
        kernel.table.emplace(s, SectionDist(e.tag(), std::move(weights)));
      Morphism m(d.scenario(), e.scenario(), e.tag(), relations[i], std::move(kernel));
      result.status = SimSearchResult::Status::found;
      result.witness = make_simulation(std::move(m), d, e);
      return result;
    }
  }
  result.status = SimSearchResult::Status::none;
  return result;
}

}  // namespace ctxsim
