#include "schroflow/epsjet.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace schroflow {

namespace {
const Rational kZero(0);
}

EpsJet::EpsJet(Rational constant) {
  if (constant != 0) {
    lo_ = 0;
    coeffs_.push_back(std::move(constant));
  }
}

EpsJet EpsJet::monomial(int power, Rational c, int trunc) {
  EpsJet jet;
  jet.trunc_ = trunc;
  if (c != 0 && power <= trunc) {
    jet.lo_ = power;
    jet.coeffs_.push_back(std::move(c));
  }
  return jet;
}

EpsJet EpsJet::from_coeffs(int lo, std::vector<Rational> coeffs, int trunc) {
  EpsJet jet;
  jet.lo_ = lo;
  jet.coeffs_ = std::move(coeffs);
  jet.trunc_ = trunc;
  jet.normalize();
  return jet;
}

int EpsJet::highest_stored_power() const {
  if (coeffs_.empty()) throw std::domain_error("zero jet has no stored powers");
  return lo_ + static_cast<int>(coeffs_.size()) - 1;
}

const Rational& EpsJet::coeff(int power) const {
  if (power > trunc_) throw std::domain_error("jet coefficient requested beyond truncation");
  if (coeffs_.empty() || power < lo_ || power > lo_ + static_cast<int>(coeffs_.size()) - 1) return kZero;
  return coeffs_[static_cast<size_t>(power - lo_)];
}

EpsJet EpsJet::with_truncation(int trunc) const {
  EpsJet jet = *this;
  jet.trunc_ = std::min(trunc_, trunc);
  jet.normalize();
  return jet;
}

int EpsJet::trunc_limited_add(int trunc, int shift) {
  if (trunc >= kExactTrunc) return kExactTrunc;
  long long v = static_cast<long long>(trunc) + shift;
  if (v >= kExactTrunc) return kExactTrunc;
  return static_cast<int>(v);
}

void EpsJet::normalize() {
  size_t leading = 0;
  while (leading < coeffs_.size() && coeffs_[leading] == 0) ++leading;
  if (leading > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(leading));
    lo_ += static_cast<int>(leading);
  }
  // Drop anything stored past the truncation, then trailing zeros.
  if (!coeffs_.empty() && trunc_ < kExactTrunc) {
    long long keep = static_cast<long long>(trunc_) - lo_ + 1;
    if (keep <= 0)
      coeffs_.clear();
    else if (keep < static_cast<long long>(coeffs_.size()))
      coeffs_.resize(static_cast<size_t>(keep));
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty()) lo_ = 0;
}

EpsJet EpsJet::operator-() const {
  EpsJet jet = *this;
  for (auto& c : jet.coeffs_) c = -c;
  return jet;
}

EpsJet EpsJet::operator+(const EpsJet& other) const {
  int trunc = std::min(trunc_, other.trunc_);
  if (is_zero() && other.is_zero()) {
    EpsJet jet;
    jet.trunc_ = trunc;
    return jet;
  }
  int lo = std::min(coeffs_.empty() ? other.lo_ : lo_, other.coeffs_.empty() ? lo_ : other.lo_);
  int hi_a = coeffs_.empty() ? lo - 1 : lo_ + static_cast<int>(coeffs_.size()) - 1;
  int hi_b = other.coeffs_.empty() ? lo - 1 : other.lo_ + static_cast<int>(other.coeffs_.size()) - 1;
  int hi = std::min(std::max(hi_a, hi_b), trunc);
  if (hi < lo) {
    EpsJet jet;
    jet.trunc_ = trunc;
    return jet;
  }
  std::vector<Rational> out(static_cast<size_t>(hi - lo + 1), Rational(0));
  for (int p = lo; p <= hi; ++p) {
    Rational v(0);
    if (!coeffs_.empty() && p >= lo_ && p <= hi_a) v += coeffs_[static_cast<size_t>(p - lo_)];
    if (!other.coeffs_.empty() && p >= other.lo_ && p <= hi_b) v += other.coeffs_[static_cast<size_t>(p - other.lo_)];
    out[static_cast<size_t>(p - lo)] = std::move(v);
  }
  return from_coeffs(lo, std::move(out), trunc);
}

EpsJet EpsJet::operator-(const EpsJet& other) const { return *this + (-other); }

EpsJet EpsJet::operator*(const EpsJet& other) const {
  // First unknown power of the product comes from one factor's unknown
  // tail times the other's lowest power.
  int trunc = std::min(trunc_limited_add(trunc_, other.lowest_power()),
                       trunc_limited_add(other.trunc_, lowest_power()));
  if (is_zero() || other.is_zero()) {
    EpsJet jet;
    jet.trunc_ = trunc;
    return jet;
  }
  int lo = lo_ + other.lo_;
  int hi = std::min(lo + static_cast<int>(coeffs_.size() + other.coeffs_.size()) - 2, trunc);
  if (hi < lo) {
    EpsJet jet;
    jet.trunc_ = trunc;
    return jet;
  }
  std::vector<Rational> out(static_cast<size_t>(hi - lo + 1), Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    for (size_t j = 0; j < other.coeffs_.size(); ++j) {
      int p = lo_ + static_cast<int>(i) + other.lo_ + static_cast<int>(j);
      if (p > hi) break;
      out[static_cast<size_t>(p - lo)] += coeffs_[i] * other.coeffs_[j];
    }
  }
  return from_coeffs(lo, std::move(out), trunc);
}

EpsJet EpsJet::scaled(const Rational& factor) const {
  if (factor == 0) {
    EpsJet jet;
    jet.trunc_ = trunc_;
    return jet;
  }
  EpsJet jet = *this;
  for (auto& c : jet.coeffs_) c *= factor;
  return jet;
}

double EpsJet::magnitude() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(to_double(c)));
  return m;
}

std::string EpsJet::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    os << "(" << to_string(coeffs_[i]) << ")eps^" << (lo_ + static_cast<int>(i));
    first = false;
  }
  if (trunc_ != kExactTrunc) os << " + O(eps^" << (trunc_ + 1) << ")";
  return os.str();
}

EpsJet jet_invert(const EpsJet& a) {
  if (a.is_zero()) throw std::domain_error("division by zero jet");
  int lo = a.lowest_power();
  if (a.is_exact() && a.highest_stored_power() != lo)
    throw std::domain_error("inverse of an exact multi-term jet is an infinite series; set a truncation first");

  Rational lead_inv = Rational(1) / a.coeff(lo);
  if (a.highest_stored_power() == lo)
    return EpsJet::monomial(-lo, lead_inv, EpsJet::trunc_limited_add(a.truncation(), -2 * lo));

  // a = lead * eps^lo * (1 + u); invert the unit part by the standard
  // reciprocal recurrence, accurate to the same relative order.
  int rel = a.truncation() - lo;  // finite here
  std::vector<Rational> u(static_cast<size_t>(rel) + 1, Rational(0));
  for (int k = 0; k <= rel; ++k) u[static_cast<size_t>(k)] = a.coeff(lo + k) * lead_inv;
  std::vector<Rational> r(static_cast<size_t>(rel) + 1, Rational(0));
  r[0] = 1;
  for (int k = 1; k <= rel; ++k) {
    Rational acc(0);
    for (int j = 1; j <= k; ++j) acc += u[static_cast<size_t>(j)] * r[static_cast<size_t>(k - j)];
    r[static_cast<size_t>(k)] = -acc;
  }
  for (auto& c : r) c *= lead_inv;
  return EpsJet::from_coeffs(-lo, std::move(r), a.truncation() - 2 * lo);
}

EpsJet jet_exp(const EpsJet& a) {
  if (a.is_zero()) {
    if (a.is_exact()) return EpsJet(Rational(1));
    return EpsJet::monomial(0, Rational(1), a.truncation());
  }
  if (a.lowest_power() < 1)
    throw std::domain_error("jet_exp requires no negative powers and zero constant term");
  if (a.is_exact())
    throw std::domain_error("exponential of an exact nonzero jet is an infinite series; set a truncation first");

  EpsJet sum = EpsJet::monomial(0, Rational(1), a.truncation());
  EpsJet term = sum;
  Rational kfact(1);
  for (int k = 1; k * a.lowest_power() <= a.truncation(); ++k) {
    term = term * a;
    kfact *= k;
    sum += term.scaled(Rational(1) / kfact);
  }
  return sum;
}

EpsJet jet_log(const EpsJet& a) {
  if (a.is_zero() || a.coeff(0) != 1 || a.lowest_power() != 0)
    throw std::domain_error("jet_log requires constant term exactly 1");
  EpsJet u = a - EpsJet(Rational(1));
  if (u.is_zero()) {
    EpsJet jet;
    return u.is_exact() ? EpsJet() : jet.with_truncation(u.truncation());
  }
  if (u.is_exact())
    throw std::domain_error("logarithm of an exact jet is an infinite series; set a truncation first");

  EpsJet sum;
  sum = sum.with_truncation(u.truncation());
  EpsJet term = EpsJet::monomial(0, Rational(1), u.truncation());
  for (int k = 1; k * u.lowest_power() <= u.truncation(); ++k) {
    term = term * u;
    Rational factor = (k % 2 == 0) ? Rational(-1, k) : Rational(1, k);
    sum += term.scaled(factor);
  }
  return sum;
}

EpsJet jet_pow_int(const EpsJet& a, long long exponent) {
  if (exponent < 0) return jet_pow_int(jet_invert(a), -exponent);
  EpsJet acc(Rational(1));
  if (!a.is_exact()) acc = acc.with_truncation(a.truncation());
  EpsJet p = a;
  auto e = static_cast<unsigned long long>(exponent);
  while (e > 0) {
    if (e & 1) acc = acc * p;
    if (e >>= 1) p = p * p;
  }
  return acc;
}

}  // namespace schroflow
