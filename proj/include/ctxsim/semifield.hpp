#pragma once

#include <string>
#include <string_view>

#include "ctxsim/error.hpp"
#include "ctxsim/rational.hpp"

namespace ctxsim {

// The three semifield instances everything is generic over. Closed set:
// generic code dispatches on the tag, serialization is unambiguous.
enum class Semifield {
  nonneg_rational,  // exact stand-in for (R+, +, *)
  signed_rational,  // exact stand-in for (R, +, *); a field
  boolean,          // (B, or, and)
};

const char* semifield_name(Semifield tag);
Semifield semifield_from_name(std::string_view name);

// An element of one of the three semifields. Immutable value type.
class Value {
 public:
  Value() : tag_(Semifield::nonneg_rational), q_(0) {}

  static Value zero(Semifield tag);
  static Value one(Semifield tag);
  static Value rational(Semifield tag, Rational q);  // tag must be a rational instance
  static Value boolean(bool b);

  Semifield tag() const { return tag_; }
  bool is_zero() const;
  bool is_one() const;

  const Rational& as_rational() const;  // instance_mismatch on boolean
  bool as_bool() const;                 // instance_mismatch on rationals

  Value operator+(const Value& rhs) const;
  Value operator*(const Value& rhs) const;
  Value inverse() const;  // zero_inverse on 0
  Value operator/(const Value& rhs) const { return *this * rhs.inverse(); }

  bool operator==(const Value& rhs) const;
  bool operator!=(const Value& rhs) const { return !(*this == rhs); }

  std::string to_string() const;

 private:
  Value(Semifield tag, Rational q, bool b) : tag_(tag), q_(std::move(q)), b_(b) {}

  Semifield tag_;
  Rational q_;
  bool b_ = false;
};

Value sf_add(const Value& a, const Value& b);
Value sf_mul(const Value& a, const Value& b);
Value sf_inv(const Value& v);

// Homomorphism of semifields. Shipped instances: the unique collapse
// R+ -> B (v != 0) and the inclusion R+ -> R.
class Hom {
 public:
  static Hom collapse_to_boolean();          // nonneg_rational -> boolean
  static Hom include_nonneg_in_signed();     // nonneg_rational -> signed_rational
  static Hom identity(Semifield tag);

  Semifield source() const { return source_; }
  Semifield target() const { return target_; }
  Value operator()(const Value& v) const { return apply(v); }
  Value apply(const Value& v) const;  // instance_mismatch if v not in source

 private:
  enum class Kind { identity, collapse, include };
  Hom(Kind kind, Semifield source, Semifield target)
      : kind_(kind), source_(source), target_(target) {}

  Kind kind_;
  Semifield source_;
  Semifield target_;
};

inline Value hom_apply(const Hom& h, const Value& v) { return h.apply(v); }

}  // namespace ctxsim
