#include "ctxsim/morphism.hpp"

#include <algorithm>

namespace ctxsim {

namespace {

// Extends a section over A ⊆ B to a section over B, assigning measurements in
// B \ A their first outcome label. The canonical representative used when
// evaluating a component below the top; validity makes the choice irrelevant.
Section canonical_extension(const Scenario& s, const Section& u, const Face& B) {
  Section out = u;
  for (const auto& m : face_difference(B, u.domain())) out = out.with(m, s.outcomes(m).front());
  return out;
}

SectionDist marginalize(const SectionDist& d, const Face& U) {
  return d.map([&](const Section& s) { return s.restricted_to(U); });
}

std::vector<Issue> check_output_space(const Scenario& target, const Face& domain,
                                      const SectionDist& out, const std::string& where) {
  std::vector<Issue> issues;
  for (const auto& [t, _] : out.weights()) {
    if (t.domain() != domain) {
      issues.push_back({Errc::wrong_section_space,
                        where + ": output section " + t.to_string() + " is not over " +
                            face_to_string(domain)});
      continue;
    }
    for (const auto& [m, o] : t.assignment()) {
      const auto& labels = target.outcomes(m);
      if (std::find(labels.begin(), labels.end(), o) == labels.end())
        issues.push_back({Errc::wrong_section_space,
                          where + ": '" + o + "' is not an outcome of '" + m + "'"});
    }
  }
  return issues;
}

}  // namespace

std::vector<Issue> validate_morphism_parts(const MorphismParts& parts) {
  std::vector<Issue> issues = validate_relation(parts.pi, parts.target, parts.source);
  if (!issues.empty()) return issues;
  if (parts.kernel.domain != parts.target.measurements()) {
    issues.push_back({Errc::missing_component,
                      "component family is over " + face_to_string(parts.kernel.domain) +
                          ", expected the full measurement set"});
    return issues;
  }
  const Face pi_x = relation_image(parts.pi, parts.target.measurements());
  // totality over E(pi(X))
  const auto inputs = parts.source.assignments_over(pi_x);
  for (const auto& u : inputs)
    if (!parts.kernel.table.count(u))
      issues.push_back({Errc::missing_component, "no component for input " + u.to_string()});
  for (const auto& [u, out] : parts.kernel.table) {
    if (u.domain() != pi_x) {
      issues.push_back({Errc::wrong_section_space,
                        "input " + u.to_string() + " is not over " + face_to_string(pi_x)});
      continue;
    }
    if (out.tag() != parts.tag) {
      issues.push_back({Errc::instance_mismatch,
                        "component at " + u.to_string() + " has the wrong semifield"});
      continue;
    }
    auto space = check_output_space(parts.target, parts.target.measurements(), out,
                                    "component at " + u.to_string());
    issues.insert(issues.end(), space.begin(), space.end());
  }
  if (!issues.empty()) return issues;

  // Naturality: the marginal on U of the component at an input s may depend
  // only on s|_{pi(U)}. Checked on pairs of inputs differing at one
  // measurement y, against U* = {x : y ∉ pi(x)}; general pairs follow by
  // changing one measurement at a time.
  for (const auto& y : pi_x) {
    Face hidden;
    for (const auto& x : parts.target.measurements())
      if (!parts.pi.at(x).count(y)) hidden.insert(x);
    if (hidden.empty()) continue;
    for (const auto& [s, out] : parts.kernel.table) {
      const std::string& seen = s.at(y);
      for (const auto& o : parts.source.outcomes(y)) {
        if (o <= seen) continue;  // each unordered pair once
        Section s_alt = s.with(y, o);
        const auto& out_alt = parts.kernel.table.at(s_alt);
        if (marginalize(out, hidden) != marginalize(out_alt, hidden)) {
          issues.push_back({Errc::naturality_violation,
                            "marginal on " + face_to_string(hidden) +
                                " differs between inputs " + s.to_string() + " and " +
                                s_alt.to_string() + " (both restrict equally to pi(" +
                                face_to_string(hidden) + "))"});
          return issues;
        }
      }
    }
  }
  return issues;
}

Morphism::Morphism(Scenario source, Scenario target, Semifield tag, RelationImage pi,
                   ComponentFamily kernel)
    : source_(std::move(source)),
      target_(std::move(target)),
      tag_(tag),
      pi_(std::move(pi)),
      kernel_(std::move(kernel)) {
  raise_first(validate_morphism_parts({source_, target_, tag_, pi_, kernel_}));
}

std::map<Section, SectionDist> Morphism::component_at(const Face& U) const {
  const Face A = pi_image(U);
  const Face top_inputs = pi_image(target_.measurements());
  std::map<Section, SectionDist> out;
  for (const auto& u : source_.assignments_over(A)) {
    Section s = canonical_extension(source_, u, top_inputs);
    out.emplace(u, marginalize(kernel_.table.at(s), U));
  }
  return out;
}

bool Morphism::is_deterministic() const {
  for (const auto& [_, d] : kernel_.table)
    if (d.size() != 1) return false;
  return true;
}

EmpiricalModel pushforward(const Morphism& m, const EmpiricalModel& d) {
  if (d.scenario() != m.source())
    fail(Errc::scenario_mismatch, "model lives on a different scenario than the morphism source");
  if (d.tag() != m.tag()) fail(Errc::instance_mismatch, "model and morphism semifields differ");
  std::map<Face, SectionDist> tables;
  for (const auto& context : m.target().cover()) {
    auto component = m.component_at(context);
    SectionDist marg = d.marginal(m.pi_image(context));
    tables.emplace(context, marg.bind([&](const Section& s) { return component.at(s); }));
  }
  return EmpiricalModel(m.target(), d.tag(), std::move(tables));
}

SimulationCheck is_simulation(const Morphism& m, const EmpiricalModel& d,
                              const EmpiricalModel& e) {
  if (e.scenario() != m.target())
    fail(Errc::scenario_mismatch, "target model lives on a different scenario");
  EmpiricalModel pushed = pushforward(m, d);
  for (const auto& context : e.scenario().cover())
    if (pushed.table(context) != e.table(context)) return {false, context};
  return {true, std::nullopt};
}

Simulation make_simulation(Morphism m, EmpiricalModel d, EmpiricalModel e) {
  auto check = is_simulation(m, d, e);
  if (!check.ok)
    fail(Errc::not_a_simulation,
         "pushforward differs from the target at " + face_to_string(*check.witness_context));
  return Simulation{std::move(m), std::move(d), std::move(e)};
}

Morphism identity_morphism(const Scenario& s, Semifield tag) {
  ComponentFamily kernel{s.measurements(), {}};
  for (const auto& g : s.assignments_over(s.measurements()))
    kernel.table.emplace(g, SectionDist::unit(tag, g));
  return Morphism(s, s, tag, identity_relation(s), std::move(kernel));
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (f.target() != g.source())
    fail(Errc::scenario_mismatch, "morphisms are not composable");
  if (f.tag() != g.tag()) fail(Errc::instance_mismatch, "morphism semifields differ");
  RelationImage pi = compose_relations(f.pi(), g.pi());
  const Face mid = g.pi_image(g.target().measurements());
  auto f_at_mid = f.component_at(mid);
  ComponentFamily kernel{g.target().measurements(), {}};
  for (const auto& [s, through] : f_at_mid)
    kernel.table.emplace(
        s, through.bind([&](const Section& t) { return g.kernel().table.at(t); }));
  return Morphism(f.source(), g.target(), f.tag(), std::move(pi), std::move(kernel));
}

Morphism glue_local_deterministic(const Scenario& source, const Scenario& target, Semifield tag,
                                  const RelationImage& pi, const LocalParts& parts) {
  for (const auto& x : target.measurements()) {
    auto it = parts.find(x);
    if (it == parts.end()) fail(Errc::partial_local_part, "no local part for '" + x + "'");
    const Face img = relation_image(pi, Face{x});
    for (const auto& u : source.assignments_over(img)) {
      auto jt = it->second.find(u);
      if (jt == it->second.end())
        fail(Errc::partial_local_part,
             "local part for '" + x + "' undefined on " + u.to_string());
      const auto& labels = target.outcomes(x);
      if (std::find(labels.begin(), labels.end(), jt->second) == labels.end())
        fail(Errc::wrong_section_space,
             "'" + jt->second + "' is not an outcome of '" + x + "'");
    }
  }
  const Face pi_x = relation_image(pi, target.measurements());
  ComponentFamily kernel{target.measurements(), {}};
  for (const auto& s : source.assignments_over(pi_x)) {
    std::map<std::string, std::string> assignment;
    for (const auto& x : target.measurements())
      assignment.emplace(x, parts.at(x).at(s.restricted_to(relation_image(pi, Face{x}))));
    kernel.table.emplace(s, SectionDist::unit(tag, Section(std::move(assignment))));
  }
  return Morphism(source, target, tag, pi, std::move(kernel));
}

ComponentFamily glue_partition(const Scenario& source, const RelationImage& pi,
                               const ComponentFamily& f1, const ComponentFamily& f2,
                               const Face& all_target_measurements) {
  if (!face_intersection(f1.domain, f2.domain).empty() ||
      face_union(f1.domain, f2.domain) != all_target_measurements)
    fail(Errc::not_a_partition, face_to_string(f1.domain) + " and " + face_to_string(f2.domain) +
                                    " do not partition " + face_to_string(all_target_measurements));
  const Face a1 = relation_image(pi, f1.domain);
  const Face a2 = relation_image(pi, f2.domain);
  ComponentFamily glued{all_target_measurements, {}};
  for (const auto& s : source.assignments_over(face_union(a1, a2))) {
    const auto& d1 = f1.table.at(s.restricted_to(a1));
    const auto& d2 = f2.table.at(s.restricted_to(a2));
    glued.table.emplace(s, dist_product_merge(d1, d2, [](const Section& t1, const Section& t2) {
      return t1.merged_with(t2);
    }));
  }
  return glued;
}

Morphism mix_morphisms(const std::vector<std::pair<Value, Morphism>>& terms) {
  if (terms.empty()) fail(Errc::weights_not_normalized, "empty mixture");
  const Morphism& first = terms.front().second;
  for (const auto& [w, m] : terms) {
    if (m.pi() != first.pi()) fail(Errc::relation_mismatch, "mixture across relations");
    if (m.source() != first.source() || m.target() != first.target())
      fail(Errc::scenario_mismatch, "mixture across scenarios");
    if (m.tag() != first.tag() || w.tag() != first.tag())
      fail(Errc::instance_mismatch, "mixture across semifields");
  }
  ComponentFamily kernel{first.kernel().domain, {}};
  for (const auto& [s, _] : first.kernel().table) {
    std::vector<std::pair<Value, SectionDist>> parts;
    for (const auto& [w, m] : terms) parts.emplace_back(w, m.kernel().table.at(s));
    kernel.table.emplace(s, dist_convex(first.tag(), parts));
  }
  return Morphism(first.source(), first.target(), first.tag(), first.pi(), std::move(kernel));
}

namespace {
Section tag_section(const Section& s, bool left) {
  std::map<std::string, std::string> out;
  for (const auto& [m, o] : s.assignment())
    out.emplace(left ? tensor_tag_left(m) : tensor_tag_right(m), o);
  return Section(std::move(out));
}

Section untag_section(const Section& s) {
  std::map<std::string, std::string> out;
  for (const auto& [m, o] : s.assignment()) out.emplace(m.substr(2), o);
  return Section(std::move(out));
}
}  // namespace

Morphism tensor_morphisms(const Morphism& m1, const Morphism& m2) {
  if (m1.tag() != m2.tag()) fail(Errc::instance_mismatch, "tensor across semifields");
  Scenario source = tensor_scenarios(m1.source(), m2.source());
  Scenario target = tensor_scenarios(m1.target(), m2.target());
  RelationImage pi;
  for (const auto& [x, img] : m1.pi()) {
    Face tagged;
    for (const auto& y : img) tagged.insert(tensor_tag_left(y));
    pi.emplace(tensor_tag_left(x), std::move(tagged));
  }
  for (const auto& [x, img] : m2.pi()) {
    Face tagged;
    for (const auto& y : img) tagged.insert(tensor_tag_right(y));
    pi.emplace(tensor_tag_right(x), std::move(tagged));
  }
  Face left_inputs, right_inputs;
  for (const auto& y : m1.pi_image(m1.target().measurements()))
    left_inputs.insert(tensor_tag_left(y));
  for (const auto& y : m2.pi_image(m2.target().measurements()))
    right_inputs.insert(tensor_tag_right(y));
  ComponentFamily kernel{target.measurements(), {}};
  for (const auto& s : source.assignments_over(face_union(left_inputs, right_inputs))) {
    const auto& d1 = m1.kernel().table.at(untag_section(s.restricted_to(left_inputs)));
    const auto& d2 = m2.kernel().table.at(untag_section(s.restricted_to(right_inputs)));
    kernel.table.emplace(s, dist_product_merge(d1, d2, [](const Section& t1, const Section& t2) {
      return tag_section(t1, true).merged_with(tag_section(t2, false));
    }));
  }
  return Morphism(std::move(source), std::move(target), m1.tag(), std::move(pi),
                  std::move(kernel));
}

Simulation restriction_morphism(const EmpiricalModel& e, const Face& keep) {
  EmpiricalModel restricted = restrict_model(e, keep);
  RelationImage pi;
  for (const auto& m : keep) pi[m] = {m};
  ComponentFamily kernel{keep, {}};
  for (const auto& s : e.scenario().assignments_over(keep))
    kernel.table.emplace(s, SectionDist::unit(e.tag(), s));
  Morphism m(e.scenario(), restricted.scenario(), e.tag(), std::move(pi), std::move(kernel));
  return make_simulation(std::move(m), e, std::move(restricted));
}

Simulation coarse_grain_morphism(const EmpiricalModel& e, const OutcomeMaps& f) {
  EmpiricalModel grained = coarse_grain(e, f);
  ComponentFamily kernel{e.scenario().measurements(), {}};
  for (const auto& s : e.scenario().assignments_over(e.scenario().measurements()))
    kernel.table.emplace(s, SectionDist::unit(e.tag(), apply_outcome_maps(f, s)));
  Morphism m(e.scenario(), grained.scenario(), e.tag(), identity_relation(e.scenario()),
             std::move(kernel));
  return make_simulation(std::move(m), e, std::move(grained));
}

Simulation terminal_simulation(const EmpiricalModel& e, const SectionDist& global) {
  if (global.tag() != e.tag()) fail(Errc::instance_mismatch, "global distribution semifield differs");
  const Face all = e.scenario().measurements();
  for (const auto& [g, _] : global.weights())
    if (g.domain() != all)
      fail(Errc::wrong_section_space, g.to_string() + " is not a global section");
  for (const auto& context : e.scenario().cover())
    if (marginalize(global, context) != e.table(context))
      fail(Errc::not_a_global_explanation,
           "marginal at " + face_to_string(context) + " does not match the table");
  RelationImage pi;
  for (const auto& x : all) pi[x] = {};
  ComponentFamily kernel{all, {{Section::empty(), global}}};
  Morphism m(Scenario::empty(), e.scenario(), e.tag(), std::move(pi), std::move(kernel));
  return make_simulation(std::move(m), terminal_model(e.tag()), e);
}

Simulation graham_simulation(const EmpiricalModel& e, const std::string& x,
                             const std::optional<std::string>& fallback) {
  const Scenario& sc = e.scenario();
  if (!graham_reducible_vertices(sc).count(x))
    fail(Errc::not_reducible, "'" + x + "' does not lie in exactly one cover member");
  Face context;  // the unique cover member containing x
  for (const auto& c : sc.cover())
    if (c.count(x)) context = c;
  const std::string o = fallback.value_or(sc.outcomes(x).front());
  {
    const auto& labels = sc.outcomes(x);
    if (std::find(labels.begin(), labels.end(), o) == labels.end())
      fail(Errc::wrong_section_space, "'" + o + "' is not an outcome of '" + x + "'");
  }
  const Face rest = face_difference(sc.measurements(), Face{x});
  EmpiricalModel d = restrict_model(e, rest);
  const Face given = face_difference(context, Face{x});

  // sigma on {x}: conditional of the context table on the rest of the
  // context, with a Dirac fallback outside the support.
  SectionDist margin = e.marginal(given);
  auto pairs = e.table(context).map([&](const Section& t) {
    return std::make_pair(t.restricted_to(Face{x}), t.restricted_to(given));
  });
  ComponentFamily on_x{Face{x}, {}};
  for (const auto& s : d.scenario().assignments_over(given)) {
    if (margin.contains(s))
      on_x.table.emplace(s, dist_conditional(pairs, s));
    else
      on_x.table.emplace(s, SectionDist::unit(e.tag(), Section::empty().with(x, o)));
  }
  ComponentFamily on_rest{rest, {}};
  for (const auto& s : d.scenario().assignments_over(rest))
    on_rest.table.emplace(s, SectionDist::unit(e.tag(), s));

  RelationImage pi;
  pi[x] = given;
  for (const auto& m : rest) pi[m] = {m};
  ComponentFamily kernel = glue_partition(d.scenario(), pi, on_x, on_rest, sc.measurements());
  Morphism m(d.scenario(), sc, e.tag(), std::move(pi), std::move(kernel));
  return make_simulation(std::move(m), std::move(d), e);
}

Morphism collapse_morphism(const Morphism& m, const Hom& h) {
  if (m.tag() != h.source()) fail(Errc::instance_mismatch, "morphism is not over the hom's source");
  ComponentFamily kernel{m.kernel().domain, {}};
  for (const auto& [s, out] : m.kernel().table) {
    std::map<Section, Value> weights;
    for (const auto& [t, v] : out.weights()) weights.emplace(t, h.apply(v));
    kernel.table.emplace(s, SectionDist(h.target(), std::move(weights)));
  }
  return Morphism(m.source(), m.target(), h.target(), m.pi(), std::move(kernel));
}

std::pair<Simulation, Simulation> image_factorization(const Simulation& sim) {
  const Morphism& m = sim.morphism;
  const Face image = m.pi_image(m.target().measurements());
  Simulation first = restriction_morphism(sim.source, image);
  Morphism second(first.target.scenario(), m.target(), m.tag(), m.pi(), m.kernel());
  Simulation tail = make_simulation(std::move(second), first.target, sim.target);
  return {std::move(first), std::move(tail)};
}

}  // namespace ctxsim
