#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "schroflow/epsjet.hpp"
#include "schroflow/rational.hpp"

namespace schroflow {

template <class D>
struct DomainTraits;

template <>
struct DomainTraits<Rational> {
  static constexpr const char* name = "rational";
  static constexpr bool exact = true;
  using Time = Rational;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& v) { return v == 0; }
  static bool is_one(const Rational& v) { return v == 1; }
  static Rational from_rational(const Rational& q) { return q; }
  static bool is_exact_zero(const Rational& v) { return v == 0; }
  static Rational inverse(const Rational& v) {
    if (v == 0) throw std::domain_error("inverse of zero");
    return Rational(1) / v;
  }
  static double magnitude(const Rational& v) { return std::abs(to_double(v)); }
  static double to_real(const Rational& v) { return to_double(v); }
  static std::string str(const Rational& v) { return to_string(v); }
};

template <>
struct DomainTraits<double> {
  static constexpr const char* name = "float";
  static constexpr bool exact = false;
  using Time = double;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_zero(double v) { return v == 0.0; }
  static bool is_one(double v) { return v == 1.0; }
  static double from_rational(const Rational& q) { return to_double(q); }
  static bool is_exact_zero(double v) { return v == 0.0; }
  static double inverse(double v) {
    if (v == 0.0) throw std::domain_error("inverse of zero");
    return 1.0 / v;
  }
  static double magnitude(double v) { return std::abs(v); }
  static double to_real(double v) { return v; }
  static std::string str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
  }
};

template <>
struct DomainTraits<EpsJet> {
  static constexpr const char* name = "epsjet";
  static constexpr bool exact = true;
  using Time = Rational;
  static EpsJet zero() { return EpsJet(); }
  static EpsJet one() { return EpsJet(Rational(1)); }
  static bool is_zero(const EpsJet& v) { return v.is_zero(); }
  static bool is_one(const EpsJet& v) {
    return !v.is_zero() && v.lowest_power() == 0 && v.highest_stored_power() == 0 && v.coeff(0) == 1;
  }
  static EpsJet from_rational(const Rational& q) { return EpsJet(q); }
  static bool is_exact_zero(const EpsJet& v) { return v.is_zero() && v.is_exact(); }
  static EpsJet inverse(const EpsJet& v) { return jet_invert(v); }
  static double magnitude(const EpsJet& v) { return v.magnitude(); }
  static double to_real(const EpsJet& v) {
    if (v.is_zero()) return 0.0;
    if (v.lowest_power() == 0 && v.highest_stored_power() == 0) return to_double(v.coeff(0));
    throw std::domain_error("eps-jet with eps dependence is not convertible to a real");
  }
  static std::string str(const EpsJet& v) { return v.str(); }
};

// Power series in x truncated at a fixed order N; coefficients beyond N
// are unknown, never assumed zero. Binary operations truncate at the
// smaller operand order.
template <class D>
class TruncatedSeries {
 public:
  using Domain = D;

  explicit TruncatedSeries(int order) : c_(static_cast<size_t>(check_order(order)) + 1, DomainTraits<D>::zero()) {}
  TruncatedSeries(int order, std::vector<D> coeffs) : c_(std::move(coeffs)) {
    check_order(order);
    if (static_cast<int>(c_.size()) != order + 1) throw std::invalid_argument("coefficient count must be order + 1");
  }

  static TruncatedSeries identity(int order) {
    TruncatedSeries s(order);
    if (order >= 1) s[1] = DomainTraits<D>::one();
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const D& operator[](int k) const { return c_[static_cast<size_t>(k)]; }
  D& operator[](int k) { return c_[static_cast<size_t>(k)]; }

  bool operator==(const TruncatedSeries& other) const = default;

  TruncatedSeries truncated(int order) const {
    if (order >= this->order()) return *this;
    TruncatedSeries out(order);
    for (int k = 0; k <= order; ++k) out[k] = c_[static_cast<size_t>(k)];
    return out;
  }

 private:
  static int check_order(int order) {
    if (order < 0) throw std::invalid_argument("series order must be non-negative");
    return order;
  }
  std::vector<D> c_;
};

template <class D>
TruncatedSeries<D> operator+(const TruncatedSeries<D>& a, const TruncatedSeries<D>& b) {
  int n = std::min(a.order(), b.order());
  TruncatedSeries<D> out(n);
  for (int k = 0; k <= n; ++k) out[k] = a[k] + b[k];
  return out;
}

template <class D>
TruncatedSeries<D> operator-(const TruncatedSeries<D>& a, const TruncatedSeries<D>& b) {
  int n = std::min(a.order(), b.order());
  TruncatedSeries<D> out(n);
  for (int k = 0; k <= n; ++k) out[k] = a[k] - b[k];
  return out;
}

template <class D>
TruncatedSeries<D> operator-(const TruncatedSeries<D>& a) {
  TruncatedSeries<D> out(a.order());
  for (int k = 0; k <= a.order(); ++k) out[k] = -a[k];
  return out;
}

template <class D>
TruncatedSeries<D> operator*(const TruncatedSeries<D>& a, const TruncatedSeries<D>& b) {
  int n = std::min(a.order(), b.order());
  TruncatedSeries<D> out(n);
  for (int i = 0; i <= n; ++i) {
    // Exact zeros contribute nothing; zeros with a finite jet window still
    // carry truncation information and must flow through the products.
    if (DomainTraits<D>::is_exact_zero(a[i])) continue;
    for (int j = 0; i + j <= n; ++j) out[i + j] = out[i + j] + a[i] * b[j];
  }
  return out;
}

template <class D>
TruncatedSeries<D> scaled(const TruncatedSeries<D>& a, const D& factor) {
  TruncatedSeries<D> out(a.order());
  for (int k = 0; k <= a.order(); ++k) out[k] = a[k] * factor;
  return out;
}

template <class D>
bool is_zero_series(const TruncatedSeries<D>& a) {
  for (int k = 0; k <= a.order(); ++k)
    if (!DomainTraits<D>::is_zero(a[k])) return false;
  return true;
}

template <class D>
double max_abs_coeff(const TruncatedSeries<D>& a) {
  double m = 0.0;
  for (int k = 0; k <= a.order(); ++k) m = std::max(m, DomainTraits<D>::magnitude(a[k]));
  return m;
}

// a(b(x)) by Horner accumulation; b must preserve the fixed point at the
// origin so that the truncation stays consistent.
template <class D>
TruncatedSeries<D> compose(const TruncatedSeries<D>& a, const TruncatedSeries<D>& b) {
  if (!DomainTraits<D>::is_zero(b[0])) throw std::domain_error("composition requires inner series with zero constant term");
  int n = std::min(a.order(), b.order());
  TruncatedSeries<D> acc(n);
  acc[0] = a[n];
  for (int k = n - 1; k >= 0; --k) {
    acc = acc * b;
    acc[0] = acc[0] + a[k];
  }
  return acc;
}

template <class D>
TruncatedSeries<D> derivative(const TruncatedSeries<D>& a) {
  if (a.order() == 0) return TruncatedSeries<D>(0);
  TruncatedSeries<D> out(a.order() - 1);
  for (int k = 1; k <= a.order(); ++k) out[k - 1] = a[k] * DomainTraits<D>::from_rational(Rational(k));
  return out;
}

// 1 / a for a with invertible constant term.
template <class D>
TruncatedSeries<D> reciprocal(const TruncatedSeries<D>& a) {
  D inv0 = DomainTraits<D>::inverse(a[0]);
  TruncatedSeries<D> out(a.order());
  out[0] = inv0;
  for (int k = 1; k <= a.order(); ++k) {
    D acc = DomainTraits<D>::zero();
    for (int j = 1; j <= k; ++j) acc = acc + a[j] * out[k - j];
    out[k] = -(acc * inv0);
  }
  return out;
}

// Compositional inverse via Lagrange inversion: b_n = [x^(n-1)] (x/a)^n / n.
// In the eps-jet domain the linear coefficient must be exactly 1 so that no
// jet division by a non-unit leading term occurs.
template <class D>
TruncatedSeries<D> revert(const TruncatedSeries<D>& a) {
  if (!DomainTraits<D>::is_zero(a[0])) throw std::domain_error("reversion requires zero constant term");
  if (a.order() < 1) throw std::domain_error("reversion requires order >= 1");
  if constexpr (std::is_same_v<D, EpsJet>) {
    if (!DomainTraits<D>::is_one(a[1]))
      throw std::domain_error("eps-jet reversion requires linear coefficient exactly 1");
  } else {
    if (DomainTraits<D>::is_zero(a[1])) throw std::domain_error("reversion requires invertible linear coefficient");
  }

  int n = a.order();
  TruncatedSeries<D> u(n - 1);
  for (int k = 0; k <= n - 1; ++k) u[k] = a[k + 1];
  TruncatedSeries<D> g = reciprocal(u);  // x/a(x)

  TruncatedSeries<D> out(n);
  TruncatedSeries<D> gpow = g;
  out[1] = g[0];
  for (int m = 2; m <= n; ++m) {
    gpow = gpow * g;
    out[m] = gpow[m - 1] * DomainTraits<D>::from_rational(Rational(1, m));
  }
  return out;
}

struct EvalResult {
  double value = 0.0;
  double tail_estimate = 0.0;
  bool tail_reliable = true;
};

// Horner evaluation with a geometric tail bound |c_N x^N| r/(1-r), where
// r = |x| * rho and rho is the root-test estimate from the last five
// coefficients. r >= 1 marks the bound unreliable rather than failing.
template <class D>
EvalResult evaluate(const TruncatedSeries<D>& a, double x) {
  int n = a.order();
  double acc = 0.0;
  for (int k = n; k >= 0; --k) acc = acc * x + DomainTraits<D>::to_real(a[k]);

  double rho = 0.0;
  for (int k = std::max(1, n - 4); k <= n; ++k) {
    double c = DomainTraits<D>::magnitude(a[k]);
    if (c > 0.0) rho = std::max(rho, std::pow(c, 1.0 / k));
  }
  EvalResult res;
  res.value = acc;
  double last = DomainTraits<D>::magnitude(a[n]) * std::pow(std::abs(x), n);
  double r = std::abs(x) * rho;
  if (r >= 1.0) {
    res.tail_reliable = false;
    res.tail_estimate = std::numeric_limits<double>::infinity();
    if (last == 0.0) res.tail_estimate = 0.0;
  } else {
    res.tail_estimate = last * r / (1.0 - r);
  }
  return res;
}

inline TruncatedSeries<double> to_float_series(const TruncatedSeries<Rational>& a) {
  TruncatedSeries<double> out(a.order());
  for (int k = 0; k <= a.order(); ++k) out[k] = to_double(a[k]);
  return out;
}

}  // namespace schroflow
