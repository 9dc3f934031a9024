#include "schroflow/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace schroflow {

std::string to_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

BigInt parse_integer(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer in rational literal");
  return BigInt(std::string(text));
}

}  // namespace

Rational rational_from_string(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash));
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in rational literal");
    return Rational(num, den);
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_integer(text));

  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  bool negative = !whole.empty() && (whole.front() == '-');
  if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
  for (char c : frac)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("malformed decimal literal");
  BigInt scale = 1;
  for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
  BigInt mantissa = (whole.empty() ? BigInt(0) : parse_integer(whole)) * scale +
                    (frac.empty() ? BigInt(0) : parse_integer(frac));
  if (negative) mantissa = -mantissa;
  return Rational(mantissa, scale);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational pow_int(const Rational& base, long long exponent) {
  if (exponent == 0) return Rational(1);
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("zero base with negative exponent");
    return pow_int(Rational(denominator(base), numerator(base)), -exponent);
  }
  Rational acc(1), p = base;
  auto e = static_cast<unsigned long long>(exponent);
  while (e > 0) {
    if (e & 1) acc *= p;
    p *= p;
    e >>= 1;
  }
  return acc;
}

BigInt integer_kth_root(const BigInt& value, unsigned long k) {
  if (value < 0) throw std::domain_error("k-th root of negative integer");
  if (k == 0) throw std::domain_error("zeroth root");
  if (value == 0 || value == 1 || k == 1) return value;

  // Newton iteration x <- ((k-1)x + v/x^(k-1))/k from an upper bound.
  BigInt x = value, prev;
  do {
    prev = x;
    BigInt xk1 = boost::multiprecision::pow(x, static_cast<unsigned>(k - 1));
    x = ((k - 1) * x + value / xk1) / k;
  } while (x < prev);
  return prev;
}

std::optional<Rational> exact_pow(const Rational& s, const Rational& t) {
  if (s <= 0) throw std::domain_error("exact_pow requires s > 0");
  if (t == 0) return Rational(1);

  BigInt p = numerator(t);
  BigInt q = denominator(t);
  if (q > 1000000) throw std::domain_error("exact_pow exponent denominator too large");
  auto root_index = q.convert_to<unsigned long>();

  BigInt num = numerator(s), den = denominator(s);
  BigInt num_root = integer_kth_root(num, root_index);
  BigInt den_root = integer_kth_root(den, root_index);
  // Verify by re-powering; Newton gives only the floor.
  if (boost::multiprecision::pow(num_root, static_cast<unsigned>(root_index)) != num) return std::nullopt;
  if (boost::multiprecision::pow(den_root, static_cast<unsigned>(root_index)) != den) return std::nullopt;

  if (p < std::numeric_limits<long long>::min() || p > std::numeric_limits<long long>::max())
    throw std::domain_error("exact_pow exponent numerator too large");
  return pow_int(Rational(num_root, den_root), p.convert_to<long long>());
}

}  // namespace schroflow
