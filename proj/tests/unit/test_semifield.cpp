#include <doctest.h>

#include <set>

#include "ctxsim/semifield.hpp"

using namespace ctxsim;

namespace {

std::vector<Value> small_values(Semifield tag) {
  std::vector<Value> out;
  if (tag == Semifield::boolean) {
    out.push_back(Value::boolean(false));
    out.push_back(Value::boolean(true));
    return out;
  }
  std::set<Rational> seen;
  const int lo = tag == Semifield::signed_rational ? -10 : 0;
  for (int p = lo; p <= 10; ++p)
    for (int q = 1; q <= 10; ++q) seen.insert(Rational(p, q));
  for (const auto& r : seen) out.push_back(Value::rational(tag, r));
  return out;
}

const std::vector<Semifield> kTags{Semifield::nonneg_rational, Semifield::signed_rational,
                                   Semifield::boolean};

}  // namespace

TEST_CASE("inverses") {
  auto nn = [](long p, long q) { return Value::rational(Semifield::nonneg_rational, Rational(p, q)); };
  auto sr = [](long p, long q) { return Value::rational(Semifield::signed_rational, Rational(p, q)); };
  CHECK(sf_inv(nn(3, 4)) == nn(4, 3));
  CHECK(sf_inv(Value::boolean(true)) == Value::boolean(true));
  CHECK(sf_inv(sr(-2, 5)) == sr(-5, 2));
  for (auto tag : kTags) {
    CHECK_THROWS_AS((void)sf_inv(Value::zero(tag)), Error);
    try {
      (void)sf_inv(Value::zero(tag));
    } catch (const Error& e) {
      CHECK(e.code() == Errc::zero_inverse);
    }
  }
}

TEST_CASE("semifield axioms hold exhaustively on small values") {
  for (auto tag : kTags) {
    CAPTURE(semifield_name(tag));
    const auto values = small_values(tag);
    const Value zero = Value::zero(tag);
    const Value one = Value::one(tag);
    for (const auto& a : values) {
      CHECK(a + zero == a);
      CHECK(a * one == a);
      CHECK(a * zero == zero);
      if (!a.is_zero()) CHECK(a * sf_inv(a) == one);
      for (const auto& b : values) {
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
      }
    }
    // ternary laws on a coarser grid to keep the loop count sane
    std::vector<Value> coarse;
    if (tag == Semifield::boolean) {
      coarse = values;
    } else {
      std::set<Rational> seen;
      const int lo = tag == Semifield::signed_rational ? -5 : 0;
      for (int p = lo; p <= 5; ++p)
        for (int q = 1; q <= 5; ++q) seen.insert(Rational(p, q));
      for (const auto& r : seen) coarse.push_back(Value::rational(tag, r));
    }
    for (const auto& a : coarse)
      for (const auto& b : coarse)
        for (const auto& c : coarse) {
          CHECK((a + b) + c == a + (b + c));
          CHECK((a * b) * c == a * (b * c));
          CHECK(a * (b + c) == a * b + a * c);
        }
  }
}

TEST_CASE("mixing instances is rejected") {
  CHECK_THROWS_AS((void)(Value::one(Semifield::nonneg_rational) + Value::boolean(true)), Error);
  CHECK_THROWS_AS((void)Value::rational(Semifield::nonneg_rational, Rational(-1, 2)), Error);
}

TEST_CASE("homomorphisms") {
  const Hom collapse = Hom::collapse_to_boolean();
  const Hom include = Hom::include_nonneg_in_signed();
  auto nn = [](long p, long q) { return Value::rational(Semifield::nonneg_rational, Rational(p, q)); };

  CHECK(hom_apply(collapse, nn(3, 4)) == Value::boolean(true));
  CHECK(hom_apply(collapse, Value::zero(Semifield::nonneg_rational)) == Value::boolean(false));
  CHECK(hom_apply(include, nn(1, 2)) ==
        Value::rational(Semifield::signed_rational, Rational(1, 2)));
  CHECK_THROWS_AS((void)hom_apply(collapse, Value::boolean(true)), Error);

  // preservation of 0, 1, + and * on exhaustive small values
  for (const Hom& h : {collapse, include}) {
    CHECK(h.apply(Value::zero(h.source())) == Value::zero(h.target()));
    CHECK(h.apply(Value::one(h.source())) == Value::one(h.target()));
    const auto values = small_values(h.source());
    for (const auto& a : values)
      for (const auto& b : values) {
        CHECK(h.apply(a + b) == h.apply(a) + h.apply(b));
        CHECK(h.apply(a * b) == h.apply(a) * h.apply(b));
      }
  }
}

TEST_CASE("rational literals") {
  CHECK(rational_to_string(Rational(1, 2)) == "1/2");
  CHECK(rational_to_string(Rational(3)) == "3");
  CHECK(rational_to_string(Rational(-2, 5)) == "-2/5");
  CHECK(rational_from_string("1/2") == Rational(1, 2));
  CHECK(rational_from_string("7") == Rational(7));
  CHECK(rational_from_string("-10/4") == Rational(-5, 2));
  CHECK_THROWS_AS((void)rational_from_string("1/0"), Error);
  CHECK_THROWS_AS((void)rational_from_string("x"), Error);
  CHECK_THROWS_AS((void)rational_from_string("1/-2"), Error);
}
