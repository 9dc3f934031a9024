#include "schroflow/catalog.hpp"

#include <cmath>
#include <deque>
#include <mutex>
#include <stdexcept>

#include "schroflow/lambertw.hpp"

namespace schroflow {

namespace {

const Rational kZeroQ(0);

BigInt factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

BigInt ipow(long long base, int exp) { return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp)); }

BigInt central_binomial(int k) { return factorial(2 * k) / (factorial(k) * factorial(k)); }

using SPoly = std::vector<Rational>;  // dense in s, index = power

SPoly spoly_mul(const SPoly& a, const SPoly& b) {
  SPoly out(a.size() + b.size() - 1, kZeroQ);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// acc += c * s^shift * p
void spoly_add_scaled(SPoly& acc, const SPoly& p, const Rational& c, size_t shift) {
  if (acc.size() < p.size() + shift) acc.resize(p.size() + shift, kZeroQ);
  for (size_t i = 0; i < p.size(); ++i) acc[i + shift] += c * p[i];
}

SPoly one_minus_s_to(int j) {
  SPoly p(static_cast<size_t>(j) + 1, kZeroQ);
  p[0] = 1;
  p[static_cast<size_t>(j)] = -1;
  return p;
}

void spoly_trim(SPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

PnPolynomial compute_pn(int n, const std::deque<PnPolynomial>& table) {
  // table holds p_1 .. p_{n-1}
  SPoly acc{kZeroQ};
  SPoly running{Rational(1)};  // prod_{j=m}^{n-2} (1 - s^j), built descending in m
  BigInt nm1_fact = factorial(n - 1);
  for (int m = n - 1; m >= 1; --m) {
    Rational c(nm1_fact * ipow(m, n - m), factorial(m - 1) * factorial(n - m));
    SPoly term = spoly_mul(table[static_cast<size_t>(m - 1)].coeffs, running);
    spoly_add_scaled(acc, term, c, static_cast<size_t>(m - 1));
    if (m > 1) running = spoly_mul(running, one_minus_s_to(m - 1));
  }
  spoly_trim(acc);
  return PnPolynomial{n, std::move(acc)};
}

}  // namespace

const Rational& PnPolynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs.size())) return kZeroQ;
  return coeffs[static_cast<size_t>(k)];
}

Rational PnPolynomial::operator()(const Rational& s) const {
  Rational acc(0);
  for (size_t i = coeffs.size(); i-- > 0;) acc = acc * s + coeffs[i];
  return acc;
}

PnPolynomial ricker_pn(int n) {
  if (n < 1) throw std::domain_error("ricker_pn requires n >= 1");
  static std::mutex mutex;
  static std::deque<PnPolynomial> table;
  std::lock_guard<std::mutex> lock(mutex);
  if (table.empty()) {
    table.push_back(PnPolynomial{1, {Rational(1)}});
    table.push_back(PnPolynomial{2, {Rational(1)}});
  }
  while (static_cast<int>(table.size()) < n) table.push_back(compute_pn(static_cast<int>(table.size()) + 1, table));
  return table[static_cast<size_t>(n - 1)];
}

Rational ricker_psi_coeff(int n, const Rational& s) {
  if (n < 1) throw std::domain_error("ricker_psi_coeff requires n >= 1");
  if (s == 0 || s == 1 || s == -1) throw std::domain_error("ricker_psi_coeff: s in {0, 1, -1} is excluded");
  Rational denom(factorial(n - 1));
  Rational spow(1);
  for (int k = 1; k <= n - 1; ++k) {
    spow *= s;
    denom *= (1 - spow);
  }
  return ricker_pn(n)(s) / denom;
}

Rational ricker_qn_value(int n, const Rational& s, const TruncatedSeries<Rational>& phi) {
  if (n < 1 || n > phi.order()) throw std::domain_error("ricker_qn_value: n out of range");
  Rational prod(factorial(n - 1));
  Rational spow(1);
  for (int k = 1; k <= n - 1; ++k) {
    spow *= s;
    prod *= (1 - spow);
  }
  return phi[n] * prod;
}

PnStructuralReport pn_structural_report(int n) {
  PnPolynomial pn = ricker_pn(n);
  PnStructuralReport report;
  report.n = n;

  struct Term {
    std::string label;
    long long s_power;
    Rational value;
    bool present;
  };
  auto coeff_pow = [&](int e) { return e >= 0; };
  std::vector<Term> terms;
  terms.push_back({"n^(n-2) s^((n-1)(n-2)/2)", static_cast<long long>(n - 1) * (n - 2) / 2,
                   n >= 2 ? Rational(ipow(n, n - 2)) : Rational(0), coeff_pow(n - 2)});
  terms.push_back({"(n-2) n^(n-3) s^(n(n-3)/2)", static_cast<long long>(n) * (n - 3) / 2,
                   n >= 3 ? Rational((n - 2) * ipow(n, n - 3)) : Rational(0), coeff_pow(n - 3) && n - 2 >= 0});
  terms.push_back({"(n-3)(7n-6)/2 n^(n-4) s^(n(n-3)/2-1)", static_cast<long long>(n) * (n - 3) / 2 - 1,
                   n >= 4 ? Rational(BigInt(n - 3) * (7 * n - 6) * ipow(n, n - 4), 2) : Rational(0),
                   coeff_pow(n - 4) && n - 3 >= 0});
  terms.push_back({"(n-1)(61n^2-338n+384)/6 n^(n-5) s^((n+1)(n-4)/2)", static_cast<long long>(n + 1) * (n - 4) / 2,
                   n >= 5 ? Rational(BigInt(n - 1) * (61 * n * n - 338 * n + 384) * ipow(n, n - 5), 6) : Rational(0),
                   coeff_pow(n - 5)});
  terms.push_back({"(n-1)(705n^3-6265n^2+17018n-15000)/24 n^(n-6) s^((n+1)(n-4)/2-1)",
                   static_cast<long long>(n + 1) * (n - 4) / 2 - 1,
                   n >= 6 ? Rational(BigInt(n - 1) * (BigInt(705) * n * n * n - BigInt(6265) * n * n + 17018 * n - 15000) *
                                         ipow(n, n - 6),
                                     24)
                          : Rational(0),
                   coeff_pow(n - 6)});
  terms.push_back({"((n-1)(n-2)/2 3^(n-3) - 1) s^2", 2,
                   n >= 3 ? Rational(BigInt(n - 1) * (n - 2) * ipow(3, n - 3) - 2, 2) : Rational(0),
                   coeff_pow(n - 3)});
  terms.push_back({"((n-1) 2^(n-2) - 1) s", 1, n >= 2 ? Rational(BigInt(n - 1) * ipow(2, n - 2) - 1) : Rational(0),
                   coeff_pow(n - 2)});
  terms.push_back({"1", 0, Rational(1), true});

  for (size_t i = 0; i < terms.size(); ++i) {
    const Term& t = terms[i];
    if (!t.present || t.s_power < 0) continue;
    bool collides = false;
    for (size_t j = 0; j < terms.size(); ++j)
      if (j != i && terms[j].present && terms[j].s_power >= 0 && terms[j].s_power == t.s_power) collides = true;
    if (collides) {
      report.ambiguous.push_back(t.label);
      continue;
    }
    if (pn.coeff(static_cast<int>(t.s_power)) == t.value)
      report.matched.push_back(t.label);
    else
      report.mismatched.push_back(t.label);
  }
  return report;
}

IterateChain ricker_iterate_chain(int n, double x) {
  if (n < 1) throw std::domain_error("ricker_iterate_chain requires n >= 1");
  IterateChain chain;
  chain.n = n;
  chain.a.reserve(static_cast<size_t>(n));
  double a1 = x * std::exp(x);
  chain.a.push_back(a1);
  double prod = a1;
  for (int k = 2; k <= n; ++k) {
    double ak = std::exp(prod);
    if (!std::isfinite(ak)) throw std::overflow_error("ricker iterate chain overflowed at a_" + std::to_string(k));
    chain.a.push_back(ak);
    prod *= ak;
    if (!std::isfinite(prod)) throw std::overflow_error("ricker iterate chain overflowed at a_" + std::to_string(k));
  }
  double acc = 1.0;
  for (int k = n; k >= 2; --k) acc = 1.0 + chain.a[static_cast<size_t>(k - 1)] * acc;
  chain.value = a1 * std::exp(a1 * acc);
  if (!std::isfinite(chain.value)) throw std::overflow_error("ricker iterate overflowed");
  return chain;
}

double ricker_integer_iterate(int n, double x) {
  if (n < 0) throw std::domain_error("ricker_integer_iterate requires n >= 0");
  if (n == 0) return x;
  if (n == 1) {
    double v = x * std::exp(x);
    if (!std::isfinite(v)) throw std::overflow_error("ricker iterate overflowed");
    return v;
  }
  return ricker_iterate_chain(n - 1, x).value;
}

double ricker_radius(int n) { return std::abs(ricker_integer_iterate(n, -1.0)); }

namespace {

TruncatedSeries<Rational> poly_series_q(int order, std::vector<Rational> low_coeffs) {
  TruncatedSeries<Rational> s(order);
  for (int k = 1; k <= order && k <= static_cast<int>(low_coeffs.size()); ++k)
    s[k] = low_coeffs[static_cast<size_t>(k - 1)];
  return s;
}

CatalogEntry make_schroder_example() {
  CatalogEntry e;
  e.id = "schroder-example";
  e.s_q = Rational(2);
  e.s = 2.0;
  e.f1 = [](double x) { return 2.0 * x * (1.0 + x); };
  e.psi = [](double x) { return 0.5 * std::log(1.0 + 2.0 * x); };
  e.phi = [](double x) { return 0.5 * (std::exp(2.0 * x) - 1.0); };
  // (sqrt(1+2x)-1)/2 in the form that stays accurate as x -> 0; the
  // Koenigs limit multiplies iterates by 2^N and would amplify the
  // cancellation noise of the naive form.
  e.backward = [](double x) { return x / (std::sqrt(1.0 + 2.0 * x) + 1.0); };
  e.trajectory = [](double x, double t) { return 0.5 * (std::pow(1.0 + 2.0 * x, std::pow(2.0, t)) - 1.0); };
  e.series_q = [](int order) { return poly_series_q(order, {Rational(2), Rational(2)}); };
  e.series_f = [](int order) { return to_float_series(poly_series_q(order, {Rational(2), Rational(2)})); };
  e.psi_taylor_q = [](int order) {
    // (1/2) ln(1 + 2x): coefficient n is (-1)^(n+1) 2^(n-1) / n
    TruncatedSeries<Rational> t(order);
    for (int k = 1; k <= order; ++k) {
      Rational c(ipow(2, k - 1), k);
      t[k] = (k % 2 == 0) ? -c : c;
    }
    return t;
  };
  e.solver_map_q = e.series_q;
  e.solver_map_s = e.s_q;
  return e;
}

CatalogEntry make_ricker(const Rational& s_q) {
  CatalogEntry e;
  e.id = "ricker";
  e.s_parameter = true;
  e.s_q = s_q;
  e.s = to_double(s_q);
  double sd = e.s;
  e.f1 = [sd](double x) { return sd * x * std::exp(x); };
  e.backward = [sd](double x) { return lambertw_eval(x / sd); };
  auto builder = [s_q](int order) {
    TruncatedSeries<Rational> f(order);
    BigInt fact = 1;
    for (int k = 1; k <= order; ++k) {
      if (k >= 2) fact *= (k - 1);
      f[k] = s_q / Rational(fact);
    }
    return f;
  };
  e.series_q = builder;
  e.series_f = [builder](int order) { return to_float_series(builder(order)); };
  e.solver_map_q = builder;
  e.solver_map_s = s_q;
  return e;
}

CatalogEntry make_quadratic() {
  CatalogEntry e;
  e.id = "quadratic";
  e.s_q = Rational(2);
  e.s = 2.0;
  e.tau_scale = std::log(2.0);
  e.f1 = [](double x) { return 2.0 * x; };
  e.psi = [](double x) { return x; };
  e.phi = [](double x) { return x; };
  e.backward = [](double x) { return 0.5 * x; };
  e.trajectory = [](double x, double t) { return x * std::pow(2.0, t); };
  e.series_q = [](int order) { return poly_series_q(order, {Rational(2)}); };
  e.series_f = [](int order) { return to_float_series(poly_series_q(order, {Rational(2)})); };
  e.psi_taylor_q = [](int order) { return TruncatedSeries<Rational>::identity(order); };
  e.solver_map_q = e.series_q;
  e.solver_map_s = e.s_q;
  return e;
}

CatalogEntry make_quartic() {
  CatalogEntry e;
  e.id = "quartic";
  e.s_q = Rational(1, 3);
  e.s = 1.0 / 3.0;
  e.x0 = 1.0;
  e.tau_scale = 0.5 * std::log(3.0);
  e.f1 = [](double x) { return (2.0 * x + 1.0) / (x + 2.0); };
  e.psi = [](double x) { return 2.0 * (x - 1.0) / (x + 1.0); };
  e.phi = [](double x) { return (2.0 + x) / (2.0 - x); };
  e.backward = [](double x) { return (2.0 * x - 1.0) / (2.0 - x); };
  e.trajectory = [](double x, double t) {
    double g = (x + 1.0) * std::pow(3.0, t);
    return (x - 1.0 + g) / (1.0 - x + g);
  };
  // Centered at x0 = 1: u/(3 + u) = sum (-1)^(k-1) u^k / 3^k.
  e.series_q = [](int order) {
    TruncatedSeries<Rational> f(order);
    for (int k = 1; k <= order; ++k) {
      Rational c(1, ipow(3, k));
      f[k] = (k % 2 == 0) ? -c : c;
    }
    return f;
  };
  e.series_f = [sq = e.series_q](int order) { return to_float_series(sq(order)); };
  // 2u/(2 + u) = sum (-1)^(k-1) u^k / 2^(k-1).
  e.psi_taylor_q = [](int order) {
    TruncatedSeries<Rational> t(order);
    for (int k = 1; k <= order; ++k) {
      Rational c(1, ipow(2, k - 1));
      t[k] = (k % 2 == 0) ? -c : c;
    }
    return t;
  };
  e.solver_map_q = e.series_q;
  e.solver_map_s = e.s_q;
  return e;
}

CatalogEntry make_sextic() {
  CatalogEntry e;
  e.id = "sextic";
  e.s_rational = false;
  e.s = std::sqrt(2.0);
  e.tau_scale = 0.5 * std::log(2.0);
  e.f1 = [](double x) { return std::sqrt(2.0) * x / std::sqrt(1.0 + x * x); };
  e.psi = [](double x) { return x / std::sqrt(1.0 - x * x); };
  e.phi = [](double x) { return x / std::sqrt(1.0 + x * x); };
  e.backward = [](double x) { return x / std::sqrt(2.0 - x * x); };
  e.trajectory = [](double x, double t) {
    double g = std::pow(2.0, t);
    return x * std::sqrt(g) / std::sqrt(1.0 - x * x + x * x * g);
  };
  e.series_f = [](int order) {
    // sqrt(2) x (1 + x^2)^(-1/2)
    TruncatedSeries<double> f(order);
    for (int k = 0; 2 * k + 1 <= order; ++k) {
      Rational c(central_binomial(k), ipow(4, k));
      double v = std::sqrt(2.0) * to_double(c);
      f[2 * k + 1] = (k % 2 == 0) ? v : -v;
    }
    return f;
  };
  // x (1 - x^2)^(-1/2) = sum binom(2k, k)/4^k x^(2k+1)
  e.psi_taylor_q = [](int order) {
    TruncatedSeries<Rational> t(order);
    for (int k = 0; 2 * k + 1 <= order; ++k) t[2 * k + 1] = Rational(central_binomial(k), ipow(4, k));
    return t;
  };
  // Doubled map f1 o f1 = 2x (1 + 3x^2)^(-1/2), multiplier 2; shares psi.
  e.solver_map_q = [](int order) {
    TruncatedSeries<Rational> f(order);
    for (int k = 0; 2 * k + 1 <= order; ++k) {
      Rational c(2 * central_binomial(k) * ipow(3, k), ipow(4, k));
      f[2 * k + 1] = (k % 2 == 0) ? c : -c;
    }
    return f;
  };
  e.solver_map_s = Rational(2);
  e.solver_time_factor = 2;
  return e;
}

}  // namespace

CatalogEntry catalog_lookup(const std::string& id, std::optional<Rational> s_param) {
  if (id == "schroder-example") return make_schroder_example();
  if (id == "ricker") return make_ricker(s_param.value_or(Rational(2)));
  if (id == "quadratic") return make_quadratic();
  if (id == "quartic") return make_quartic();
  if (id == "sextic") return make_sextic();
  throw std::domain_error("unknown catalog id: " + id);
}

std::vector<std::string> catalog_ids() { return {"schroder-example", "ricker", "quadratic", "quartic", "sextic"}; }

}  // namespace schroflow
