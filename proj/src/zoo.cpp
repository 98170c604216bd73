#include "ctxsim/model.hpp"

namespace ctxsim {

namespace {

constexpr Semifield kNN = Semifield::nonneg_rational;

Value frac(long num, long den) { return Value::rational(kNN, Rational(num, den)); }

Section sec(std::initializer_list<std::pair<const char*, const char*>> entries) {
  std::map<std::string, std::string> a;
  for (const auto& [m, o] : entries) a.emplace(m, o);
  return Section(std::move(a));
}

std::map<std::string, std::vector<std::string>> binary(std::initializer_list<const char*> names) {
  std::map<std::string, std::vector<std::string>> out;
  for (const char* n : names) out.emplace(n, std::vector<std::string>{"0", "1"});
  return out;
}

EmpiricalModel anticorr_coins() {
  Scenario s(binary({"x", "y"}), {Face{"x", "y"}});
  std::map<Section, Value> t{
      {sec({{"x", "0"}, {"y", "1"}}), frac(1, 2)},
      {sec({{"x", "1"}, {"y", "0"}}), frac(1, 2)},
  };
  return EmpiricalModel(ModelData{std::move(s), kNN, {{Face{"x", "y"}, std::move(t)}}});
}

EmpiricalModel parity_triple() {
  Scenario s(binary({"x", "y", "z"}), {Face{"x", "y", "z"}});
  std::map<Section, Value> t;
  for (const char* x : {"0", "1"})
    for (const char* y : {"0", "1"}) {
      const char* z = (x[0] != y[0]) ? "1" : "0";  // z = x xor y
      t.emplace(sec({{"x", x}, {"y", y}, {"z", z}}), frac(1, 4));
    }
  return EmpiricalModel(ModelData{std::move(s), kNN, {{Face{"x", "y", "z"}, std::move(t)}}});
}

// First coin fair; second fair given x=0, biased 2/3 toward 1 given x=1.
EmpiricalModel biased_pair() {
  Scenario s(binary({"x", "y"}), {Face{"x", "y"}});
  std::map<Section, Value> t{
      {sec({{"x", "0"}, {"y", "0"}}), frac(1, 4)},
      {sec({{"x", "0"}, {"y", "1"}}), frac(1, 4)},
      {sec({{"x", "1"}, {"y", "0"}}), frac(1, 6)},
      {sec({{"x", "1"}, {"y", "1"}}), frac(1, 3)},
  };
  return EmpiricalModel(ModelData{std::move(s), kNN, {{Face{"x", "y"}, std::move(t)}}});
}

// Two equally weighted sections over {m1, m2}.
std::map<Section, Value> two_point(const char* m1, const char* m2, const char* p1, const char* q1,
                                   const char* p2, const char* q2) {
  return {
      {sec({{m1, p1}, {m2, q1}}), frac(1, 2)},
      {sec({{m1, p2}, {m2, q2}}), frac(1, 2)},
  };
}

EmpiricalModel pr_box() {
  Scenario s(binary({"a", "a'", "b", "b'"}),
             {Face{"a", "b"}, Face{"a", "b'"}, Face{"a'", "b"}, Face{"a'", "b'"}});
  std::map<Face, std::map<Section, Value>> tables;
  auto correlated = [&](const char* m1, const char* m2) {
    return two_point(m1, m2, "0", "0", "1", "1");
  };
  auto anticorrelated = [&](const char* m1, const char* m2) {
    return two_point(m1, m2, "0", "1", "1", "0");
  };
  tables.emplace(Face{"a", "b"}, correlated("a", "b"));
  tables.emplace(Face{"a", "b'"}, correlated("a", "b'"));
  tables.emplace(Face{"a'", "b"}, correlated("a'", "b"));
  tables.emplace(Face{"a'", "b'"}, anticorrelated("a'", "b'"));
  return EmpiricalModel(ModelData{std::move(s), kNN, std::move(tables)});
}

EmpiricalModel specker_triangle() {
  Scenario s(binary({"a", "b", "c"}), {Face{"a", "b"}, Face{"b", "c"}, Face{"a", "c"}});
  std::map<Face, std::map<Section, Value>> tables;
  auto anticorrelated = [&](const char* m1, const char* m2) {
    return two_point(m1, m2, "0", "1", "1", "0");
  };
  tables.emplace(Face{"a", "b"}, anticorrelated("a", "b"));
  tables.emplace(Face{"b", "c"}, anticorrelated("b", "c"));
  tables.emplace(Face{"a", "c"}, anticorrelated("a", "c"));
  return EmpiricalModel(ModelData{std::move(s), kNN, std::move(tables)});
}

// (2,2,2) model that is logically but not strongly contextual: the supported
// section (a=0, b=0) extends to no consistent global, while
// (a=0, b=1, a'=0, b'=1) is consistent with every context's support.
EmpiricalModel hardy() {
  Scenario s(binary({"a", "a'", "b", "b'"}),
             {Face{"a", "b"}, Face{"a", "b'"}, Face{"a'", "b"}, Face{"a'", "b'"}});
  std::map<Face, std::map<Section, Value>> tables;
  std::map<Section, Value> uniform;
  for (const char* p : {"0", "1"})
    for (const char* q : {"0", "1"}) uniform.emplace(sec({{"a", p}, {"b", q}}), frac(1, 4));
  tables.emplace(Face{"a", "b"}, std::move(uniform));
  auto anticorrelated = [&](const char* m1, const char* m2) {
    return two_point(m1, m2, "0", "1", "1", "0");
  };
  tables.emplace(Face{"a", "b'"}, anticorrelated("a", "b'"));
  tables.emplace(Face{"a'", "b"}, anticorrelated("a'", "b"));
  tables.emplace(Face{"a'", "b'"}, anticorrelated("a'", "b'"));
  return EmpiricalModel(ModelData{std::move(s), kNN, std::move(tables)});
}

}  // namespace

std::vector<std::string> zoo_names() {
  return {"anticorr-coins", "biased-pair", "hardy", "parity-triple",
          "pr-box",         "specker-triangle", "terminal"};
}

EmpiricalModel zoo_get(const std::string& name) {
  if (name == "anticorr-coins") return anticorr_coins();
  if (name == "parity-triple") return parity_triple();
  if (name == "biased-pair") return biased_pair();
  if (name == "pr-box") return pr_box();
  if (name == "specker-triangle") return specker_triangle();
  if (name == "hardy") return hardy();
  if (name == "terminal") return terminal_model(kNN);
  fail(Errc::unknown_model, "no zoo model named '" + name + "'");
}

}  // namespace ctxsim
