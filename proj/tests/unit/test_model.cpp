#include <doctest.h>

#include "ctxsim/model.hpp"
#include "support/gen.hpp"

using namespace ctxsim;

namespace {

constexpr Semifield kNN = Semifield::nonneg_rational;
Value nn(long p, long q = 1) { return Value::rational(kNN, Rational(p, q)); }
Section sec(std::initializer_list<std::pair<const char*, const char*>> entries) {
  std::map<std::string, std::string> a;
  for (const auto& [m, o] : entries) a.emplace(m, o);
  return Section(std::move(a));
}

}  // namespace

TEST_CASE("zoo fixtures are exact") {
  auto parity = zoo_get("parity-triple");
  const auto& t = parity.table(Face{"x", "y", "z"});
  CHECK(t.size() == 4);
  CHECK(t.at(sec({{"x", "0"}, {"y", "0"}, {"z", "0"}})) == nn(1, 4));
  CHECK(t.at(sec({{"x", "0"}, {"y", "1"}, {"z", "1"}})) == nn(1, 4));
  CHECK(t.at(sec({{"x", "1"}, {"y", "0"}, {"z", "1"}})) == nn(1, 4));
  CHECK(t.at(sec({{"x", "1"}, {"y", "1"}, {"z", "0"}})) == nn(1, 4));

  auto coins = zoo_get("anticorr-coins");
  const auto& c = coins.table(Face{"x", "y"});
  CHECK(c.at(sec({{"x", "0"}, {"y", "1"}})) == nn(1, 2));
  CHECK(c.at(sec({{"x", "1"}, {"y", "0"}})) == nn(1, 2));
  CHECK(c.size() == 2);

  auto biased = zoo_get("biased-pair");
  const auto& b = biased.table(Face{"x", "y"});
  CHECK(b.at(sec({{"x", "1"}, {"y", "1"}})) == nn(1, 3));
  CHECK(b.at(sec({{"x", "1"}, {"y", "0"}})) == nn(1, 6));

  auto specker = zoo_get("specker-triangle");
  CHECK(specker.scenario().cover().size() == 3);
  for (const auto& context : specker.scenario().cover()) {
    const auto& table = specker.table(context);
    CHECK(table.size() == 2);
    for (const auto& [s, p] : table.weights()) {
      CHECK(p == nn(1, 2));
      auto it = s.assignment().begin();
      auto jt = std::next(it);
      CHECK(it->second != jt->second);  // anticorrelated
    }
  }

  CHECK(zoo_get("pr-box").scenario().cover().size() == 4);
  CHECK(zoo_get("hardy").table(Face{"a", "b"}).size() == 4);
  CHECK(zoo_get("terminal") == terminal_model(kNN));
  CHECK_THROWS_AS((void)zoo_get("nope"), Error);
  for (const auto& name : zoo_names()) CHECK_NOTHROW((void)zoo_get(name));
}

TEST_CASE("validation catches signalling") {
  auto pr = zoo_get("pr-box");
  ModelData data{pr.scenario(), kNN, {}};
  for (const auto& [context, dist] : pr.tables()) data.tables[context] = dist.weights();
  CHECK(validate_model_data(data).empty());

  // replace one table by a Dirac: marginals on shared measurements break
  data.tables[Face{"a", "b"}] = {{sec({{"a", "0"}, {"b", "0"}}), nn(1)}};
  auto issues = validate_model_data(data);
  REQUIRE(!issues.empty());
  CHECK(issues.front().code == Errc::signalling);
  CHECK_THROWS_AS((void)EmpiricalModel(ModelData(data)), Error);

  ModelData missing{pr.scenario(), kNN, {}};
  auto miss_issues = validate_model_data(missing);
  REQUIRE(!miss_issues.empty());
  CHECK(miss_issues.front().code == Errc::missing_table);

  // single-context model is vacuously compatible
  ModelData single{Scenario({{"x", {"0", "1"}}}, {Face{"x"}}), kNN, {}};
  single.tables[Face{"x"}] = {{sec({{"x", "0"}}), nn(1)}};
  CHECK(validate_model_data(single).empty());

  // sections over the wrong context
  ModelData wrong{single.scenario, kNN, {}};
  wrong.tables[Face{"x"}] = {{sec({{"y", "0"}}), nn(1)}};
  REQUIRE(!validate_model_data(wrong).empty());
  CHECK(validate_model_data(wrong).front().code == Errc::wrong_section_space);
}

TEST_CASE("marginals") {
  auto coins = zoo_get("anticorr-coins");
  auto mx = coins.marginal(Face{"x"});
  CHECK(mx.at(sec({{"x", "0"}})) == nn(1, 2));
  CHECK(mx.at(sec({{"x", "1"}})) == nn(1, 2));
  CHECK(coins.marginal(Face{}) == SectionDist::unit(kNN, Section::empty()));
  CHECK(coins.marginal(Face{"x", "y"}) == coins.table(Face{"x", "y"}));

  // independence of the covering context, checked over every face
  auto specker = zoo_get("specker-triangle");
  for (const auto& face : specker.scenario().faces()) {
    SectionDist expected = specker.marginal(face);
    for (const auto& context : specker.scenario().cover()) {
      if (!is_subset(face, context)) continue;
      CHECK(specker.table(context).map(
                [&](const Section& s) { return s.restricted_to(face); }) == expected);
    }
  }
}

TEST_CASE("restriction") {
  auto parity = zoo_get("parity-triple");
  auto coins = restrict_model(parity, Face{"x", "y"});
  const auto& t = coins.table(Face{"x", "y"});
  for (const char* x : {"0", "1"})
    for (const char* y : {"0", "1"}) CHECK(t.at(sec({{"x", x}, {"y", y}})) == nn(1, 4));

  CHECK(restrict_model(parity, parity.scenario().measurements()) == parity);
  CHECK(restrict_model(parity, Face{}) == terminal_model(kNN));

  // nested restriction collapses
  auto specker = zoo_get("specker-triangle");
  Face y1{"a", "b"};
  Face meet{"a"};
  CHECK(restrict_model(specker, meet) == restrict_model(restrict_model(specker, y1), meet));
}

TEST_CASE("coarse-graining") {
  auto parity = zoo_get("parity-triple");
  CHECK(coarse_grain(parity, {}) == parity);

  // collapsing x and y to a point leaves z a fair coin
  OutcomeMaps squash{{"x", {{"0", "*"}, {"1", "*"}}}, {"y", {{"0", "*"}, {"1", "*"}}}};
  auto squashed = coarse_grain(parity, squash);
  auto z = squashed.marginal(Face{"z"});
  CHECK(z.at(sec({{"z", "0"}})) == nn(1, 2));
  CHECK(z.at(sec({{"z", "1"}})) == nn(1, 2));
  auto x = squashed.marginal(Face{"x"});
  CHECK(x.at(sec({{"x", "*"}})) == nn(1));

  OutcomeMaps partial{{"x", {{"0", "*"}}}};
  CHECK_THROWS_AS((void)coarse_grain(parity, partial), Error);
}

TEST_CASE("mixtures of models") {
  auto pr = zoo_get("pr-box");
  CHECK(mix_models({{nn(1), pr}}) == pr);

  // half PR, half deterministic all-zeros
  std::map<Face, SectionDist> zero_tables;
  for (const auto& context : pr.scenario().cover()) {
    std::map<std::string, std::string> a;
    for (const auto& m : context) a.emplace(m, "0");
    zero_tables.emplace(context, SectionDist::unit(kNN, Section(std::move(a))));
  }
  EmpiricalModel zeros(pr.scenario(), kNN, std::move(zero_tables));
  auto mixed = mix_models({{nn(1, 2), pr}, {nn(1, 2), zeros}});
  CHECK(mixed.table(Face{"a", "b"}).at(sec({{"a", "0"}, {"b", "0"}})) == nn(3, 4));
  CHECK(mixed.table(Face{"a", "b"}).at(sec({{"a", "1"}, {"b", "1"}})) == nn(1, 4));
  CHECK(mixed.table(Face{"a'", "b'"}).at(sec({{"a'", "0"}, {"b'", "0"}})) == nn(1, 2));

  CHECK_THROWS_AS((void)mix_models({{nn(1, 2), pr}, {nn(1, 2), zoo_get("specker-triangle")}}),
                  Error);
}

TEST_CASE("tensor of models") {
  auto specker = zoo_get("specker-triangle");
  auto squared = tensor_models(specker, specker);
  CHECK(squared.scenario().cover().size() == 9);
  for (const auto& context : squared.scenario().cover()) {
    const auto& table = squared.table(context);
    CHECK(table.size() == 4);
    for (const auto& [s, p] : table.weights()) CHECK(p == nn(1, 4));
  }

  auto dirac = tensor_models(restrict_model(specker, Face{}), restrict_model(specker, Face{}));
  CHECK(dirac.scenario() == Scenario::empty());

  // tensoring with the terminal model only retags measurements
  auto parity = zoo_get("parity-triple");
  auto tagged = tensor_models(parity, terminal_model(kNN));
  std::map<std::string, std::string> names;
  for (const auto& m : parity.scenario().measurements()) names.emplace("L:" + m, m);
  CHECK(rename_measurements(tagged, names) == parity);
}

TEST_CASE("possibilistic collapse") {
  auto pr = zoo_get("pr-box");
  auto collapsed = collapse_model(pr, Hom::collapse_to_boolean());
  CHECK(collapsed.tag() == Semifield::boolean);
  for (const auto& [context, table] : collapsed.tables()) {
    CHECK(table.size() == 2);
    for (const auto& [s, v] : table.weights()) CHECK(v == Value::boolean(true));
  }

  // collapse of a mixture is the union of supports
  auto specker = zoo_get("specker-triangle");
  std::map<Face, SectionDist> tables;
  for (const auto& context : specker.scenario().cover()) {
    std::map<std::string, std::string> a;
    for (const auto& m : context) a.emplace(m, "0");
    tables.emplace(context, SectionDist::unit(kNN, Section(std::move(a))));
  }
  EmpiricalModel zeros(specker.scenario(), kNN, std::move(tables));
  auto mixed = mix_models({{nn(1, 2), specker}, {nn(1, 2), zeros}});
  auto lhs = collapse_model(mixed, Hom::collapse_to_boolean());
  for (const auto& context : specker.scenario().cover()) {
    for (const auto& [s, _] : specker.table(context).weights())
      CHECK(lhs.table(context).contains(s));
    for (const auto& [s, _] : zeros.table(context).weights())
      CHECK(lhs.table(context).contains(s));
    CHECK(lhs.table(context).size() == 3);  // the two anticorrelated plus 00
  }
}

TEST_CASE("collapsing a mixture is the supportwise union of collapses") {
  testgen::Rng rng(90210);
  const Hom collapse = Hom::collapse_to_boolean();
  const Value yes = Value::boolean(true);
  for (int rep = 0; rep < 30; ++rep) {
    Scenario s = testgen::random_scenario(rng, 4);
    EmpiricalModel e1 = testgen::random_ns_model(rng, s);
    EmpiricalModel e2 = testgen::random_ns_model(rng, s);
    auto mixed = mix_models({{nn(1, 3), e1}, {nn(2, 3), e2}});
    CHECK(collapse_model(mixed, collapse) ==
          mix_models({{yes, collapse_model(e1, collapse)}, {yes, collapse_model(e2, collapse)}}));
  }
}
