#include <doctest.h>

#include "ctxsim/morphism.hpp"
#include "support/gen.hpp"

using namespace ctxsim;
namespace tg = ctxsim::testgen;

namespace {

constexpr Semifield kNN = Semifield::nonneg_rational;
Value nn(long p, long q = 1) { return Value::rational(kNN, Rational(p, q)); }
Section sec(std::initializer_list<std::pair<const char*, const char*>> entries) {
  std::map<std::string, std::string> a;
  for (const auto& [m, o] : entries) a.emplace(m, o);
  return Section(std::move(a));
}

// The worked example: three jointly measurable bits with z = x xor y,
// simulated from the two independent coins.
struct ParityExample {
  EmpiricalModel parity = zoo_get("parity-triple");
  EmpiricalModel coins = restrict_model(parity, Face{"x", "y"});
  Morphism morphism = build();

  Morphism build() const {
    RelationImage pi{{"x", {"x"}}, {"y", {"y"}}, {"z", {"x", "y"}}};
    LocalParts parts;
    std::map<Section, std::string> sx, sy, sz;
    for (const char* a : {"0", "1"}) {
      sx.emplace(sec({{"x", a}}), a);
      sy.emplace(sec({{"y", a}}), a);
      for (const char* b : {"0", "1"})
        sz.emplace(sec({{"x", a}, {"y", b}}), a[0] != b[0] ? "1" : "0");
    }
    parts.emplace("x", sx);
    parts.emplace("y", sy);
    parts.emplace("z", sz);
    return glue_local_deterministic(coins.scenario(), parity.scenario(), kNN, pi, parts);
  }
};

}  // namespace

TEST_CASE("parity morphism simulates the triple from two coins") {
  ParityExample ex;
  CHECK(validate_morphism(ex.morphism).empty());
  CHECK(ex.morphism.is_deterministic());
  CHECK(pushforward(ex.morphism, ex.coins) == ex.parity);
  CHECK(is_simulation(ex.morphism, ex.coins, ex.parity).ok);
}

TEST_CASE("naturality violations are caught") {
  ParityExample ex;
  // leak y's value into x's output: the marginal on {x} then depends on a
  // measurement outside pi(x)
  ComponentFamily bad{Face{"x", "y", "z"}, {}};
  for (const char* a : {"0", "1"})
    for (const char* b : {"0", "1"}) {
      const char* z = a[0] != b[0] ? "1" : "0";
      bad.table.emplace(sec({{"x", a}, {"y", b}}),
                        SectionDist::unit(kNN, sec({{"x", b}, {"y", b}, {"z", z}})));
    }
  auto issues = validate_morphism_parts(
      {ex.coins.scenario(), ex.parity.scenario(), kNN, ex.morphism.pi(), bad});
  REQUIRE(!issues.empty());
  CHECK(issues.front().code == Errc::naturality_violation);
  CHECK_THROWS_AS(Morphism(ex.coins.scenario(), ex.parity.scenario(), kNN, ex.morphism.pi(), bad),
                  Error);

  ComponentFamily partial{Face{"x", "y", "z"}, {}};
  partial.table.emplace(sec({{"x", "0"}, {"y", "0"}}),
                        SectionDist::unit(kNN, sec({{"x", "0"}, {"y", "0"}, {"z", "0"}})));
  auto missing = validate_morphism_parts(
      {ex.coins.scenario(), ex.parity.scenario(), kNN, ex.morphism.pi(), partial});
  REQUIRE(!missing.empty());
  CHECK(missing.front().code == Errc::missing_component);
}

TEST_CASE("anticorrelated coin is simulated from one flip") {
  auto coins = zoo_get("anticorr-coins");
  auto one = restrict_model(coins, Face{"x"});
  RelationImage pi{{"x", {"x"}}, {"y", {"x"}}};
  LocalParts parts;
  std::map<Section, std::string> sx, sy;
  for (const char* a : {"0", "1"}) {
    sx.emplace(sec({{"x", a}}), a);
    sy.emplace(sec({{"x", a}}), a[0] == '0' ? "1" : "0");  // 1 - a
  }
  parts.emplace("x", sx);
  parts.emplace("y", sy);
  Morphism m = glue_local_deterministic(one.scenario(), coins.scenario(), kNN, pi, parts);
  CHECK(is_simulation(m, one, coins).ok);
}

TEST_CASE("component_at marginalizes the top component") {
  ParityExample ex;
  auto at_z = ex.morphism.component_at(Face{"z"});
  CHECK(at_z.at(sec({{"x", "0"}, {"y", "1"}})) == SectionDist::unit(kNN, sec({{"z", "1"}})));
  auto at_empty = ex.morphism.component_at(Face{});
  CHECK(at_empty.at(Section::empty()) == SectionDist::unit(kNN, Section::empty()));
}

TEST_CASE("identity and composition laws") {
  tg::Rng rng(4711);
  for (int rep = 0; rep < 60; ++rep) {
    Scenario s1 = tg::random_scenario(rng, 3);
    Scenario s2 = tg::random_scenario(rng, 3);
    Morphism f = tg::random_morphism(rng, s1, s2, kNN);
    CHECK(compose(identity_morphism(s2, kNN), f) == f);
    CHECK(compose(f, identity_morphism(s1, kNN)) == f);
  }
  for (int rep = 0; rep < 40; ++rep) {
    Scenario s1 = tg::random_scenario(rng, 3);
    Scenario s2 = tg::random_scenario(rng, 3);
    Scenario s3 = tg::random_scenario(rng, 3);
    Scenario s4 = tg::random_scenario(rng, 3);
    Morphism f = tg::random_morphism(rng, s1, s2, kNN);
    Morphism g = tg::random_morphism(rng, s2, s3, kNN);
    Morphism h = tg::random_morphism(rng, s3, s4, kNN);
    CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
  }
}

TEST_CASE("pushforward is functorial") {
  tg::Rng rng(1999);
  for (int rep = 0; rep < 60; ++rep) {
    Scenario s1 = tg::random_scenario(rng, 3);
    Scenario s2 = tg::random_scenario(rng, 3);
    Scenario s3 = tg::random_scenario(rng, 3);
    EmpiricalModel d = tg::random_ns_model(rng, s1);
    Morphism f = tg::random_morphism(rng, s1, s2, kNN);
    Morphism g = tg::random_morphism(rng, s2, s3, kNN);
    CHECK(pushforward(compose(g, f), d) == pushforward(g, pushforward(f, d)));
  }
}

TEST_CASE("pushforward commutes with model mixtures") {
  tg::Rng rng(31337);
  for (int rep = 0; rep < 60; ++rep) {
    Scenario s1 = tg::random_scenario(rng, 3);
    Scenario s2 = tg::random_scenario(rng, 3);
    EmpiricalModel d1 = tg::random_ns_model(rng, s1);
    EmpiricalModel d2 = tg::random_ns_model(rng, s1);
    Morphism f = tg::random_morphism(rng, s1, s2, kNN);
    auto w = tg::random_simplex_point(rng, 2);
    Value w0 = Value::rational(kNN, w[0]);
    Value w1 = Value::rational(kNN, w[1]);
    auto lhs = pushforward(f, mix_models({{w0, d1}, {w1, d2}}));
    auto rhs = mix_models({{w0, pushforward(f, d1)}, {w1, pushforward(f, d2)}});
    CHECK(lhs == rhs);
  }
}

TEST_CASE("mixtures of morphisms push forward to mixtures") {
  tg::Rng rng(555);
  for (int rep = 0; rep < 60; ++rep) {
    Scenario s1 = tg::random_scenario(rng, 3);
    Scenario s2 = tg::random_scenario(rng, 3);
    EmpiricalModel d = tg::random_ns_model(rng, s1);
    RelationImage pi = tg::random_relation(rng, s2, s1);
    auto det = [&]() {
      LocalParts parts;
      for (const auto& x : s2.measurements()) {
        std::map<Section, std::string> part;
        for (const auto& u : s1.assignments_over(pi.at(x)))
          part.emplace(u, tg::choose(rng, s2.outcomes(x)));
        parts.emplace(x, std::move(part));
      }
      return glue_local_deterministic(s1, s2, kNN, pi, parts);
    };
    Morphism m1 = det(), m2 = det();
    auto w = tg::random_simplex_point(rng, 2);
    Value w0 = Value::rational(kNN, w[0]);
    Value w1 = Value::rational(kNN, w[1]);
    Morphism mixed = mix_morphisms({{w0, m1}, {w1, m2}});
    auto lhs = pushforward(mixed, d);
    auto rhs = mix_models({{w0, pushforward(m1, d)}, {w1, pushforward(m2, d)}});
    CHECK(lhs == rhs);
    CHECK(validate_morphism(mixed).empty());
  }
}

TEST_CASE("partition gluing") {
  ParityExample ex;
  const Scenario& sc = ex.parity.scenario();
  // gluing two identity families gives the identity components
  Morphism id = identity_morphism(sc, kNN);
  auto family_on = [&](const Face& part) {
    ComponentFamily fam{part, {}};
    for (const auto& s : sc.assignments_over(part))
      fam.table.emplace(s, SectionDist::unit(kNN, s));
    return fam;
  };
  ComponentFamily glued = glue_partition(sc, id.pi(), family_on(Face{"x"}),
                                         family_on(Face{"y", "z"}), sc.measurements());
  CHECK(glued.table == id.kernel().table);

  // gluing Dirac families yields the Dirac of the pair
  ComponentFamily cx{Face{"x"}, {}};
  ComponentFamily cyz{Face{"y", "z"}, {}};
  for (const auto& s : sc.assignments_over(Face{"x"}))
    cx.table.emplace(s, SectionDist::unit(kNN, sec({{"x", "1"}})));
  for (const auto& s : sc.assignments_over(Face{"y", "z"}))
    cyz.table.emplace(s, SectionDist::unit(kNN, sec({{"y", "0"}, {"z", "0"}})));
  ComponentFamily diracs = glue_partition(sc, id.pi(), cx, cyz, sc.measurements());
  for (const auto& [_, out] : diracs.table)
    CHECK(out == SectionDist::unit(kNN, sec({{"x", "1"}, {"y", "0"}, {"z", "0"}})));

  CHECK_THROWS_AS(
      (void)glue_partition(sc, id.pi(), family_on(Face{"x"}), family_on(Face{"x", "y", "z"}),
                           sc.measurements()),
      Error);
}

TEST_CASE("restriction morphisms") {
  auto parity = zoo_get("parity-triple");
  Simulation to_coins = restriction_morphism(parity, Face{"x", "y"});
  CHECK(is_simulation(to_coins.morphism, parity, to_coins.target).ok);
  CHECK(to_coins.target == restrict_model(parity, Face{"x", "y"}));

  Simulation idlike = restriction_morphism(parity, parity.scenario().measurements());
  CHECK(idlike.morphism == identity_morphism(parity.scenario(), kNN));

  Simulation to_terminal = restriction_morphism(parity, Face{});
  CHECK(to_terminal.target == terminal_model(kNN));
}

TEST_CASE("coarse-graining morphisms") {
  auto parity = zoo_get("parity-triple");
  Simulation ident = coarse_grain_morphism(parity, {});
  CHECK(ident.morphism == identity_morphism(parity.scenario(), kNN));

  OutcomeMaps squash{{"x", {{"0", "*"}, {"1", "*"}}}};
  Simulation squashed = coarse_grain_morphism(parity, squash);
  CHECK(squashed.target == coarse_grain(parity, squash));

  // a relabeling bijection composes with its inverse to the identity
  OutcomeMaps swap_z{{"z", {{"0", "1"}, {"1", "0"}}}};
  Simulation there = coarse_grain_morphism(parity, swap_z);
  Simulation back = coarse_grain_morphism(there.target, swap_z);
  CHECK(back.target == parity);
  CHECK(compose(back.morphism, there.morphism) == identity_morphism(parity.scenario(), kNN));
}

TEST_CASE("terminal simulations") {
  auto parity = zoo_get("parity-triple");
  auto own_table =
      parity.table(Face{"x", "y", "z"});  // the single context's table is global already
  Simulation sim = terminal_simulation(parity, own_table);
  CHECK(sim.source == terminal_model(kNN));
  CHECK(is_simulation(sim.morphism, sim.source, parity).ok);

  auto coins = restrict_model(parity, Face{"x", "y"});
  auto product = dist_product_merge(coins.marginal(Face{"x"}), coins.marginal(Face{"y"}),
                                    [](const Section& a, const Section& b) {
                                      return a.merged_with(b);
                                    });
  CHECK_NOTHROW((void)terminal_simulation(coins, product));

  // no distribution on the PR box's 16 globals explains it
  auto pr = zoo_get("pr-box");
  auto globals = pr.scenario().assignments_over(pr.scenario().measurements());
  std::map<Section, Value> w;
  for (const auto& g : globals) w.emplace(g, nn(1, 16));
  CHECK_THROWS_AS((void)terminal_simulation(pr, SectionDist(kNN, std::move(w))), Error);
}

TEST_CASE("a wrong global distribution is rejected with a witness context") {
  // the PR box has no global explanation: any terminal-shaped morphism fails
  auto pr = zoo_get("pr-box");
  RelationImage pi;
  for (const auto& x : pr.scenario().measurements()) pi[x] = {};
  std::map<Section, Value> uniform;
  for (const auto& g : pr.scenario().assignments_over(pr.scenario().measurements()))
    uniform.emplace(g, nn(1, 16));
  ComponentFamily kernel{pr.scenario().measurements(),
                         {{Section::empty(), SectionDist(kNN, std::move(uniform))}}};
  Morphism guess(Scenario::empty(), pr.scenario(), kNN, std::move(pi), std::move(kernel));
  auto check = is_simulation(guess, terminal_model(kNN), pr);
  CHECK_FALSE(check.ok);
  REQUIRE(check.witness_context.has_value());
  CHECK(pr.scenario().cover().count(*check.witness_context) == 1);
}

TEST_CASE("graham simulations realize the conditional chain") {
  // path cover with nontrivial correlations between b and c
  Scenario path(
      {{"a", {"0", "1"}}, {"b", {"0", "1"}}, {"c", {"0", "1"}}},
      {Face{"a", "b"}, Face{"b", "c"}});
  std::map<Face, SectionDist> tables;
  tables.emplace(Face{"a", "b"},
                 SectionDist(kNN, {{sec({{"a", "0"}, {"b", "0"}}), nn(1, 2)},
                                   {sec({{"a", "1"}, {"b", "0"}}), nn(1, 4)},
                                   {sec({{"a", "1"}, {"b", "1"}}), nn(1, 4)}}));
  tables.emplace(Face{"b", "c"},
                 SectionDist(kNN, {{sec({{"b", "0"}, {"c", "1"}}), nn(3, 4)},
                                   {sec({{"b", "1"}, {"c", "0"}}), nn(1, 8)},
                                   {sec({{"b", "1"}, {"c", "1"}}), nn(1, 8)}}));
  EmpiricalModel e(path, kNN, std::move(tables));

  Simulation sim = graham_simulation(e, "c");
  CHECK(sim.source == restrict_model(e, Face{"a", "b"}));
  CHECK(is_simulation(sim.morphism, sim.source, e).ok);
  CHECK_FALSE(sim.morphism.is_deterministic());

  // single context: plain chain rule
  auto parity = zoo_get("parity-triple");
  Simulation chain = graham_simulation(parity, "z");
  CHECK(is_simulation(chain.morphism, chain.source, parity).ok);

  // deterministic models give deterministic simulations
  std::map<Face, SectionDist> dirac;
  dirac.emplace(Face{"a", "b"}, SectionDist::unit(kNN, sec({{"a", "0"}, {"b", "1"}})));
  dirac.emplace(Face{"b", "c"}, SectionDist::unit(kNN, sec({{"b", "1"}, {"c", "0"}})));
  EmpiricalModel det(path, kNN, std::move(dirac));
  CHECK(graham_simulation(det, "a").morphism.is_deterministic());

  CHECK_THROWS_AS((void)graham_simulation(zoo_get("specker-triangle"), "a"), Error);
}

TEST_CASE("image factorization") {
  ParityExample ex;
  Simulation sim = make_simulation(ex.morphism, ex.coins, ex.parity);
  // the parity morphism out of the full triple only reads {x, y}
  Simulation from_triple =
      make_simulation(Morphism(ex.parity.scenario(), ex.parity.scenario(), kNN,
                               RelationImage{{"x", {"x"}}, {"y", {"y"}}, {"z", {"x", "y"}}},
                               ex.morphism.kernel()),
                      ex.parity, ex.parity);
  auto [head, tail] = image_factorization(from_triple);
  CHECK(head.target == ex.coins);
  CHECK(tail.source == ex.coins);
  CHECK(compose(tail.morphism, head.morphism) == from_triple.morphism);

  // factoring a terminal simulation passes through the empty restriction
  auto parity = zoo_get("parity-triple");
  Simulation terminal = terminal_simulation(parity, parity.table(Face{"x", "y", "z"}));
  auto [unit_head, unit_tail] = image_factorization(terminal);
  CHECK(unit_head.target.scenario() == Scenario::empty());
  CHECK(compose(unit_tail.morphism, unit_head.morphism) == terminal.morphism);

  // surjective relation image: the head is the identity-like restriction
  auto [idh, idt] = image_factorization(sim);
  CHECK(idh.target == ex.coins);
  CHECK(compose(idt.morphism, idh.morphism) == sim.morphism);
}

TEST_CASE("tensor of morphisms") {
  ParityExample ex;
  Scenario coins2 = ex.coins.scenario();
  Morphism id2 = identity_morphism(coins2, kNN);
  CHECK(tensor_morphisms(id2, id2) ==
        identity_morphism(tensor_scenarios(coins2, coins2), kNN));

  // tensor of simulations simulates the tensor
  tg::Rng rng(808);
  for (int rep = 0; rep < 25; ++rep) {
    Scenario sa = tg::random_scenario(rng, 3);
    Scenario sb = tg::random_scenario(rng, 3);
    EmpiricalModel da = tg::random_ns_model(rng, sa);
    EmpiricalModel db = tg::random_ns_model(rng, sb);
    Simulation s1 = tg::random_constructor_simulation(rng, da);
    Simulation s2 = tg::random_constructor_simulation(rng, db);
    Morphism joint = tensor_morphisms(s1.morphism, s2.morphism);
    CHECK(is_simulation(joint, tensor_models(s1.source, s2.source),
                        tensor_models(s1.target, s2.target))
              .ok);
  }

  // parity ⊗ identity applied to coins ⊗ anything
  auto biased = zoo_get("biased-pair");
  Morphism pid = tensor_morphisms(ex.morphism, identity_morphism(biased.scenario(), kNN));
  CHECK(pushforward(pid, tensor_models(ex.coins, biased)) == tensor_models(ex.parity, biased));
}

TEST_CASE("mix of terminal simulations is the terminal simulation of the mixture") {
  auto parity = zoo_get("parity-triple");
  auto t = parity.table(Face{"x", "y", "z"});
  // two global distributions explaining two deterministic models
  auto g1 = SectionDist::unit(kNN, sec({{"x", "0"}, {"y", "0"}, {"z", "0"}}));
  auto g2 = SectionDist::unit(kNN, sec({{"x", "1"}, {"y", "0"}, {"z", "1"}}));
  std::map<Face, SectionDist> t1, t2;
  t1.emplace(Face{"x", "y", "z"}, g1);
  t2.emplace(Face{"x", "y", "z"}, g2);
  EmpiricalModel e1(parity.scenario(), kNN, t1);
  EmpiricalModel e2(parity.scenario(), kNN, t2);
  Simulation s1 = terminal_simulation(e1, g1);
  Simulation s2 = terminal_simulation(e2, g2);
  Morphism mixed = mix_morphisms({{nn(1, 2), s1.morphism}, {nn(1, 2), s2.morphism}});
  auto target = mix_models({{nn(1, 2), e1}, {nn(1, 2), e2}});
  Simulation expected =
      terminal_simulation(
      target, dist_convex<Section>(kNN, {{nn(1, 2), g1}, {nn(1, 2), g2}}));
  CHECK(mixed == expected.morphism);
}

TEST_CASE("deterministic morphisms act like function application") {
  tg::Rng rng(17);
  for (int rep = 0; rep < 40; ++rep) {
    Scenario s1 = tg::random_scenario(rng, 3);
    Scenario s2 = tg::random_scenario(rng, 3);
    EmpiricalModel d = tg::random_ns_model(rng, s1);
    Morphism f = tg::random_deterministic_morphism(rng, s1, s2, kNN);
    EmpiricalModel via_kleisli = pushforward(f, d);
    // direct evaluation: map each section through the unique output
    for (const auto& context : s2.cover()) {
      auto component = f.component_at(context);
      auto direct = d.marginal(f.pi_image(context)).map([&](const Section& s) {
        return component.at(s).weights().begin()->first;
      });
      CHECK(direct == via_kleisli.table(context));
    }
  }
}

TEST_CASE("constructor simulations validate and preserve strong contextuality direction") {
  tg::Rng rng(4242);
  for (int rep = 0; rep < 50; ++rep) {
    Scenario s = tg::random_scenario(rng, 4);
    EmpiricalModel e = tg::random_ns_model(rng, s);
    Simulation sim = tg::random_constructor_simulation(rng, e);
    CHECK(validate_morphism(sim.morphism).empty());
    CHECK(is_simulation(sim.morphism, sim.source, sim.target).ok);
  }
}
