#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace schroflow {

using BigInt = boost::multiprecision::cpp_int;

// Exact arbitrary-precision fraction, always in lowest terms with a
// positive denominator (both guaranteed by the backend).
using Rational = boost::multiprecision::cpp_rational;

// Canonical form is "num/den", denominator always spelled out ("2/1").
std::string to_string(const Rational& q);

// Accepts "p/q", plain integers, and finite decimals ("-0.75" -> -3/4).
Rational rational_from_string(std::string_view text);

double to_double(const Rational& q);

Rational pow_int(const Rational& base, long long exponent);

// Floor of the q-th root of a non-negative integer.
BigInt integer_kth_root(const BigInt& value, unsigned long k);

// s^t for t = p/q in lowest terms. Exact only when numerator and
// denominator of s are perfect q-th powers (checked by root extraction
// and re-powering, never through floating point); otherwise nullopt so
// the caller can fall back to the float or eps-jet domain.
std::optional<Rational> exact_pow(const Rational& s, const Rational& t);

}  // namespace schroflow
