#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ctxsim {

// Exact arbitrary-precision rational, always in lowest terms with positive
// denominator (cpp_rational canonicalizes on every operation).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// "p/q", with "/q" omitted when q == 1.
std::string rational_to_string(const Rational& r);

// Accepts "p", "p/q" and an optional leading sign; q must be positive.
Rational rational_from_string(std::string_view text);

}  // namespace ctxsim
