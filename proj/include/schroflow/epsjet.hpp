#pragma once

#include <limits>
#include <string>
#include <vector>

#include "schroflow/rational.hpp"

namespace schroflow {

// Truncated Laurent expansion in eps = ln s with exact rational
// coefficients. A jet knows its lowest stored power and the highest
// power it is accurate to (`truncation`); arithmetic propagates the
// truncation conservatively and never widens it. Jets built from plain
// rationals are exact (truncation = kExactTrunc).
class EpsJet {
 public:
  static constexpr int kExactTrunc = std::numeric_limits<int>::max() / 4;

  EpsJet() = default;  // exact zero
  explicit EpsJet(Rational constant);
  explicit EpsJet(long long constant) : EpsJet(Rational(constant)) {}

  // c * eps^power, accurate through eps^trunc.
  static EpsJet monomial(int power, Rational c = Rational(1), int trunc = kExactTrunc);

  // Coefficients for eps^lo ... eps^(lo + coeffs.size() - 1).
  static EpsJet from_coeffs(int lo, std::vector<Rational> coeffs, int trunc);

  bool is_zero() const { return coeffs_.empty(); }
  int truncation() const { return trunc_; }
  bool is_exact() const { return trunc_ == kExactTrunc; }

  // First power whose coefficient is not known to be zero.
  int lowest_power() const { return coeffs_.empty() ? trunc_limited_add(trunc_, 1) : lo_; }
  int highest_stored_power() const;

  // Zero for powers inside the known window; throws past the truncation.
  const Rational& coeff(int power) const;

  EpsJet with_truncation(int trunc) const;

  EpsJet operator-() const;
  EpsJet operator+(const EpsJet& other) const;
  EpsJet operator-(const EpsJet& other) const;
  EpsJet operator*(const EpsJet& other) const;
  EpsJet& operator+=(const EpsJet& other) { return *this = *this + other; }
  EpsJet& operator-=(const EpsJet& other) { return *this = *this - other; }
  EpsJet& operator*=(const EpsJet& other) { return *this = *this * other; }

  EpsJet scaled(const Rational& factor) const;

  bool operator==(const EpsJet& other) const = default;

  // Largest |coefficient| in the stored window, as a double.
  double magnitude() const;

  std::string str() const;

  static int trunc_limited_add(int trunc, int shift);

 private:
  void normalize();

  int lo_ = 0;
  std::vector<Rational> coeffs_;
  int trunc_ = kExactTrunc;
};

// Multiplicative inverse; lowest power of the result is the negation of
// the input's. Zero jets are a division error, and exact multi-term jets
// must be given a finite truncation first (the inverse is an infinite
// series).
EpsJet jet_invert(const EpsJet& a);

// Taylor exponential. Requires no negative powers and zero constant term.
EpsJet jet_exp(const EpsJet& a);

// Taylor logarithm of a jet with constant term exactly 1.
EpsJet jet_log(const EpsJet& a);

EpsJet jet_pow_int(const EpsJet& a, long long exponent);

}  // namespace schroflow
