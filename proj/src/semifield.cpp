#include "ctxsim/semifield.hpp"

#include <cctype>

namespace ctxsim {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::zero_inverse: return "ZeroInverse";
    case Errc::instance_mismatch: return "InstanceMismatch";
    case Errc::not_normalized: return "NotNormalized";
    case Errc::weights_not_normalized: return "WeightsNotNormalized";
    case Errc::conditioning_on_null: return "ConditioningOnNull";
    case Errc::not_antichain: return "NotAntichain";
    case Errc::cover_incomplete: return "CoverIncomplete";
    case Errc::empty_outcome_set: return "EmptyOutcomeSet";
    case Errc::unknown_measurement: return "UnknownMeasurement";
    case Errc::not_a_face: return "NotAFace";
    case Errc::not_subset: return "NotSubset";
    case Errc::not_simplicial: return "NotSimplicial";
    case Errc::not_reducible: return "NotReducible";
    case Errc::missing_table: return "MissingTable";
    case Errc::wrong_section_space: return "WrongSectionSpace";
    case Errc::signalling: return "SignallingWitness";
    case Errc::unknown_model: return "UnknownModel";
    case Errc::missing_component: return "MissingComponent";
    case Errc::naturality_violation: return "NaturalityViolation";
    case Errc::scenario_mismatch: return "ScenarioMismatch";
    case Errc::relation_mismatch: return "RelationMismatch";
    case Errc::not_a_partition: return "NotAPartition";
    case Errc::partial_local_part: return "PartialLocalPart";
    case Errc::partial_outcome_map: return "PartialOutcomeMap";
    case Errc::not_a_global_explanation: return "NotAGlobalExplanation";
    case Errc::not_a_simulation: return "NotASimulation";
    case Errc::unsupported_semifield: return "UnsupportedSemifield";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::parse_error: return "ParseError";
    case Errc::io_error: return "IoError";
    case Errc::internal_error: return "InternalError";
  }
  return "UnknownError";
}

std::string rational_to_string(const Rational& r) {
  std::string num = numerator(r).str();
  if (denominator(r) == 1) return num;
  return num + "/" + denominator(r).str();
}

Rational rational_from_string(std::string_view text) {
  auto bad = [&]() -> Rational {
    fail(Errc::parse_error, "invalid rational literal '" + std::string(text) + "'");
  };
  if (text.empty()) bad();
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char ch : s)
      if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
  };
  if (!is_int(num) || !is_int(den)) bad();
  BigInt p{std::string(num)};
  BigInt q{std::string(den)};
  if (q <= 0) bad();
  return Rational(p, q);
}

const char* semifield_name(Semifield tag) {
  switch (tag) {
    case Semifield::nonneg_rational: return "nonneg-rational";
    case Semifield::signed_rational: return "signed-rational";
    case Semifield::boolean: return "boolean";
  }
  return "?";
}

Semifield semifield_from_name(std::string_view name) {
  if (name == "nonneg-rational") return Semifield::nonneg_rational;
  if (name == "signed-rational") return Semifield::signed_rational;
  if (name == "boolean") return Semifield::boolean;
  fail(Errc::parse_error, "unknown semifield '" + std::string(name) + "'");
}

Value Value::zero(Semifield tag) {
  return tag == Semifield::boolean ? Value(tag, 0, false) : Value(tag, Rational(0), false);
}

Value Value::one(Semifield tag) {
  return tag == Semifield::boolean ? Value(tag, 0, true) : Value(tag, Rational(1), false);
}

Value Value::rational(Semifield tag, Rational q) {
  if (tag == Semifield::boolean)
    fail(Errc::instance_mismatch, "boolean semifield holds no rational values");
  if (tag == Semifield::nonneg_rational && q < 0)
    fail(Errc::instance_mismatch, "negative value " + rational_to_string(q) + " in nonneg-rational");
  return Value(tag, std::move(q), false);
}

Value Value::boolean(bool b) { return Value(Semifield::boolean, 0, b); }

bool Value::is_zero() const { return tag_ == Semifield::boolean ? !b_ : q_ == 0; }
bool Value::is_one() const { return tag_ == Semifield::boolean ? b_ : q_ == 1; }

const Rational& Value::as_rational() const {
  if (tag_ == Semifield::boolean) fail(Errc::instance_mismatch, "boolean value has no rational form");
  return q_;
}

bool Value::as_bool() const {
  if (tag_ != Semifield::boolean) fail(Errc::instance_mismatch, "rational value has no boolean form");
  return b_;
}

namespace {
void require_same_tag(const Value& a, const Value& b) {
  if (a.tag() != b.tag())
    fail(Errc::instance_mismatch, std::string("cannot combine ") + semifield_name(a.tag()) +
                                      " with " + semifield_name(b.tag()));
}
}  // namespace

Value Value::operator+(const Value& rhs) const {
  require_same_tag(*this, rhs);
  if (tag_ == Semifield::boolean) return boolean(b_ || rhs.b_);
  return Value(tag_, q_ + rhs.q_, false);
}

Value Value::operator*(const Value& rhs) const {
  require_same_tag(*this, rhs);
  if (tag_ == Semifield::boolean) return boolean(b_ && rhs.b_);
  return Value(tag_, q_ * rhs.q_, false);
}

Value Value::inverse() const {
  if (is_zero()) fail(Errc::zero_inverse, "zero has no multiplicative inverse");
  if (tag_ == Semifield::boolean) return boolean(true);
  return Value(tag_, Rational(1) / q_, false);
}

bool Value::operator==(const Value& rhs) const {
  if (tag_ != rhs.tag_) return false;
  return tag_ == Semifield::boolean ? b_ == rhs.b_ : q_ == rhs.q_;
}

std::string Value::to_string() const {
  if (tag_ == Semifield::boolean) return b_ ? "true" : "false";
  return rational_to_string(q_);
}

Value sf_add(const Value& a, const Value& b) { return a + b; }
Value sf_mul(const Value& a, const Value& b) { return a * b; }
Value sf_inv(const Value& v) { return v.inverse(); }

Hom Hom::collapse_to_boolean() {
  return Hom(Kind::collapse, Semifield::nonneg_rational, Semifield::boolean);
}

Hom Hom::include_nonneg_in_signed() {
  return Hom(Kind::include, Semifield::nonneg_rational, Semifield::signed_rational);
}

Hom Hom::identity(Semifield tag) { return Hom(Kind::identity, tag, tag); }

Value Hom::apply(const Value& v) const {
  if (v.tag() != source_)
    fail(Errc::instance_mismatch, std::string("hom expects ") + semifield_name(source_) +
                                      ", got " + semifield_name(v.tag()));
  switch (kind_) {
    case Kind::identity: return v;
    case Kind::collapse: return Value::boolean(!v.is_zero());
    case Kind::include: return Value::rational(Semifield::signed_rational, v.as_rational());
  }
  fail(Errc::internal_error, "unreachable");
}

}  // namespace ctxsim
