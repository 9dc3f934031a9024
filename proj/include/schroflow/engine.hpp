#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schroflow/series.hpp"

namespace schroflow {

// Exact-mode impossibility of s^t; the caller should switch to the float
// or eps-jet domain.
class UnrepresentablePower : public std::domain_error {
 public:
  explicit UnrepresentablePower(const std::string& what) : std::domain_error(what) {}
};

// s^k == s for some 2 <= k <= N: the coefficient-matching recurrence
// would divide by zero.
class ResonantMultiplier : public std::domain_error {
 public:
  ResonantMultiplier(const std::string& what, int k) : std::domain_error(what), k_(k) {}
  int offending_power() const { return k_; }

 private:
  int k_;
};

// Exact arithmetic produced something the theory forbids, e.g. a
// surviving eps pole; indicates an insufficient jet window or a bug,
// never bad user input.
class InternalConsistencyError : public std::runtime_error {
 public:
  explicit InternalConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

// A map f1 in coordinates centered on its fixed point: f1(0) = 0 and the
// multiplier s is the linear coefficient. x0 records the shift back to
// the original coordinates.
template <class D>
struct MapSpec {
  TruncatedSeries<D> f1;
  D s;
  double x0 = 0.0;
  std::string descriptor;
};

template <class D>
MapSpec<D> make_map(TruncatedSeries<D> f1, double x0 = 0.0, std::string descriptor = {}) {
  if (f1.order() < 1) throw std::domain_error("map series needs order >= 1");
  if (!DomainTraits<D>::is_zero(f1[0])) throw std::domain_error("no fixed point at origin: f1(0) != 0");
  D s = f1[1];
  return MapSpec<D>{std::move(f1), std::move(s), x0, std::move(descriptor)};
}

// Schroeder pair around the fixed point: s * psi(x) = psi(f1(x)) with
// psi'(0) = 1, and phi = psi^{-1} satisfying Poincare's equation
// phi(s x) = f1(phi(x)). Both hold through x^order.
template <class D>
struct ConjugacyPair {
  TruncatedSeries<D> psi;
  TruncatedSeries<D> phi;
  D s;
  int order;
};

namespace detail {

template <class D>
void check_resonance(const D& s, int order) {
  if (DomainTraits<D>::is_zero(s)) throw std::domain_error("zero multiplier: map is singular at the fixed point");
  D spow = s;
  for (int k = 2; k <= order; ++k) {
    spow = spow * s;
    if (DomainTraits<D>::is_zero(spow - s))
      throw ResonantMultiplier("resonant multiplier: s^" + std::to_string(k) + " = s", k);
  }
}

}  // namespace detail

// Coefficient matching for Schroeder's equation:
//   c_n (s^n - s) = -[x^n] sum_{m<n} c_m (f1(x))^m,   c_1 = 1.
template <class D>
ConjugacyPair<D> solve_psi(const MapSpec<D>& map, int order) {
  if (order < 1) throw std::domain_error("order must be >= 1");
  if (!DomainTraits<D>::is_zero(map.f1[0])) throw std::domain_error("no fixed point at origin: f1(0) != 0");
  detail::check_resonance(map.s, order);

  TruncatedSeries<D> f1 = map.f1.truncated(order);

  bool linear = true;
  for (int k = 2; k <= f1.order(); ++k)
    if (!DomainTraits<D>::is_zero(f1[k])) {
      linear = false;
      break;
    }
  TruncatedSeries<D> psi = TruncatedSeries<D>::identity(order);
  if (linear) return ConjugacyPair<D>{psi, psi, map.s, order};

  // Powers of f1, kept as a coefficient table; one series product per m.
  std::vector<TruncatedSeries<D>> f1_pow;
  f1_pow.reserve(static_cast<size_t>(order));
  f1_pow.push_back(f1);
  for (int m = 2; m < order; ++m) f1_pow.push_back(f1_pow.back() * f1);

  D spow = map.s;  // s^n while solving for c_n
  for (int n = 2; n <= order; ++n) {
    spow = spow * map.s;
    D num = DomainTraits<D>::zero();
    for (int m = 1; m < n; ++m) num = num + psi[m] * f1_pow[static_cast<size_t>(m - 1)][n];
    psi[n] = -(num * DomainTraits<D>::inverse(spow - map.s));
  }

  return ConjugacyPair<D>{psi, revert(psi), map.s, order};
}

// s^t in each coefficient domain.
inline Rational flow_power(const Rational& s, const Rational& t) {
  auto p = exact_pow(s, t);
  if (!p)
    throw UnrepresentablePower("s^t = (" + to_string(s) + ")^(" + to_string(t) +
                               ") is not rational; switch to the float or eps-jet domain");
  return *p;
}

inline double flow_power(double s, double t) { return std::pow(s, t); }

inline EpsJet flow_power(const EpsJet& s, const Rational& t) { return jet_exp(jet_log(s).scaled(t)); }

// f_t = phi(s^t psi(x)): the similarity transform of the multiplicative
// map by the solved conjugacy.
template <class D>
TruncatedSeries<D> flow_series(const ConjugacyPair<D>& pair, const typename DomainTraits<D>::Time& t, int order) {
  if (order > pair.order) throw std::domain_error("flow order exceeds solved order");
  D st = flow_power(pair.s, t);
  return compose(pair.phi.truncated(order), scaled(pair.psi.truncated(order), st));
}

// s = e^eps mode: a map with unit multiplier is augmented to s*f1 with s
// carried as a jet. Psi's x^n coefficient then has pole order at most
// n-1, so base jets start accurate through eps^(order + window + 2) to
// leave at least eps^window of headroom in solved and composed results.
MapSpec<EpsJet> epsjet_augment(const TruncatedSeries<Rational>& f1_unit, int window = 2);

// Extracts the eps^0 part of every coefficient after checking that the
// Laurent principal part cancels exactly.
TruncatedSeries<Rational> limit_s_to_1(const TruncatedSeries<EpsJet>& a);

// The s -> 1 flow: solve in the eps-jet domain, compose, cancel poles.
TruncatedSeries<Rational> flow_limit_s_to_1(const ConjugacyPair<EpsJet>& pair, const Rational& t, int order);

// Initial velocity profile v = ln(s) psi/psi' (the t-derivative of the
// flow at t = 0). In the rational domain ln(s) is irrational, so the
// series is returned with the logarithm factored out.
template <class D>
struct VelocityProfile {
  TruncatedSeries<D> series;
  bool log_factor_applied;
};

template <class D>
TruncatedSeries<D> psi_over_psi_prime(const ConjugacyPair<D>& pair, int order) {
  if (order > pair.order) throw std::domain_error("velocity order exceeds solved order");
  TruncatedSeries<D> psi = pair.psi.truncated(order);
  TruncatedSeries<D> shifted(order - 1);  // psi / x
  for (int k = 0; k < order; ++k) shifted[k] = psi[k + 1];
  TruncatedSeries<D> ratio = shifted * reciprocal(derivative(psi));
  TruncatedSeries<D> v(order);
  for (int k = 0; k < order; ++k) v[k + 1] = ratio[k];
  return v;
}

inline VelocityProfile<Rational> velocity_series(const ConjugacyPair<Rational>& pair, int order) {
  return {psi_over_psi_prime(pair, order), false};
}

inline VelocityProfile<double> velocity_series(const ConjugacyPair<double>& pair, int order) {
  return {scaled(psi_over_psi_prime(pair, order), std::log(pair.s)), true};
}

inline VelocityProfile<EpsJet> velocity_series(const ConjugacyPair<EpsJet>& pair, int order) {
  return {scaled(psi_over_psi_prime(pair, order), jet_log(pair.s)), true};
}

// V = -v^2, or -(m/2) v^2 when a mass is supplied.
template <class D>
TruncatedSeries<D> potential_series(const TruncatedSeries<D>& v, std::optional<Rational> mass = std::nullopt) {
  TruncatedSeries<D> out = -(v * v);
  if (mass) out = scaled(out, DomainTraits<D>::from_rational(*mass / 2));
  return out;
}

// Koenigs construction from the backward splinter: estimate k is
// s^k (f_{-k}(x) - x0), converging to psi(x) at rate 1/s.
std::vector<double> koenigs_estimates(const std::function<double(double)>& backward_step, double s, double x0,
                                      double x, int iterations);

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double scale = 1.0;  // magnitude of the terms being cancelled
  bool exact_zero = false;

  double relative() const { return max_residual / std::max(1.0, scale); }
};

struct ConjugacyReport {
  std::vector<CheckResult> checks;
  bool all_zero_in_exact_mode = true;
  double max_residual = 0.0;
  double max_relative = 0.0;
};

template <class D>
CheckResult residual_check(std::string name, const TruncatedSeries<D>& residual, double scale) {
  CheckResult res;
  res.name = std::move(name);
  res.max_residual = max_abs_coeff(residual);
  res.scale = scale;
  res.exact_zero = is_zero_series(residual);
  return res;
}

// psi(s x): coefficientwise scaling by s^k.
template <class D>
TruncatedSeries<D> scale_argument(const TruncatedSeries<D>& a, const D& s) {
  TruncatedSeries<D> out(a.order());
  D p = DomainTraits<D>::one();
  out[0] = a[0];
  for (int k = 1; k <= a.order(); ++k) {
    p = p * s;
    out[k] = a[k] * p;
  }
  return out;
}

inline std::vector<std::pair<Rational, Rational>> default_composition_times() {
  return {{Rational(1), Rational(-1)},
          {Rational(1, 2), Rational(1, 2)},
          {Rational(2), Rational(1)},
          {Rational(1, 3), Rational(2, 3)}};
}

namespace detail {

template <class D>
bool time_representable(const ConjugacyPair<D>& pair, const Rational& t) {
  if constexpr (std::is_same_v<D, Rational>) {
    return static_cast<bool>(exact_pow(pair.s, t));
  } else {
    (void)pair;
    (void)t;
    return true;
  }
}

template <class D>
typename DomainTraits<D>::Time as_time(const Rational& t) {
  if constexpr (std::is_same_v<typename DomainTraits<D>::Time, double>)
    return to_double(t);
  else
    return t;
}

}  // namespace detail

// Residual report for the functional equations: Schroeder, Poincare, the
// inverse round trip, and flow composition f_{t1} o f_{t2} = f_{t1+t2}
// over the (representable) time pairs.
template <class D>
ConjugacyReport check_conjugacy(const ConjugacyPair<D>& pair, const MapSpec<D>& map,
                                std::vector<std::pair<Rational, Rational>> time_pairs = default_composition_times()) {
  int n = pair.order;
  TruncatedSeries<D> f1 = map.f1.truncated(n);
  ConjugacyReport report;

  TruncatedSeries<D> s_psi = scaled(pair.psi, map.s);
  report.checks.push_back(residual_check("schroeder", s_psi - compose(pair.psi, f1), max_abs_coeff(s_psi)));
  TruncatedSeries<D> phi_sx = scale_argument(pair.phi, map.s);
  report.checks.push_back(residual_check("poincare", phi_sx - compose(f1, pair.phi), max_abs_coeff(phi_sx)));
  report.checks.push_back(
      residual_check("inverse_roundtrip", compose(pair.phi, pair.psi) - TruncatedSeries<D>::identity(n), 1.0));

  for (const auto& [t1, t2] : time_pairs) {
    if (!detail::time_representable(pair, t1) || !detail::time_representable(pair, t2) ||
        !detail::time_representable(pair, t1 + t2))
      continue;
    auto ft1 = flow_series(pair, detail::as_time<D>(t1), n);
    auto ft2 = flow_series(pair, detail::as_time<D>(t2), n);
    auto fsum = flow_series(pair, detail::as_time<D>(t1 + t2), n);
    report.checks.push_back(residual_check("composition(t1=" + to_string(t1) + ",t2=" + to_string(t2) + ")",
                                           compose(ft1, ft2) - fsum, max_abs_coeff(fsum)));
  }

  for (const auto& c : report.checks) {
    report.max_residual = std::max(report.max_residual, c.max_residual);
    report.max_relative = std::max(report.max_relative, c.relative());
    if (!c.exact_zero) report.all_zero_in_exact_mode = false;
  }
  return report;
}

}  // namespace schroflow
