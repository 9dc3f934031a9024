#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "schroflow/engine.hpp"
#include "schroflow/series.hpp"

namespace schroflow {

// p_n polynomial in s from the Ricker-map coefficient combinatorics:
// psi's x^n coefficient is p_n(s) / ((n-1)! prod_{k<n} (1 - s^k)).
struct PnPolynomial {
  int n = 0;
  std::vector<Rational> coeffs;  // s^0 .. s^degree

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const Rational& coeff(int k) const;
  Rational operator()(const Rational& s) const;
};

// Memoized recursion p_1 = p_2 = 1,
//   p_n = (n-1)! sum_{m=1}^{n-1} p_m s^(m-1)/(m-1)! * m^(n-m)/(n-m)!
//         * prod_{j=m}^{n-2} (1 - s^j),
// with the empty product (m = n-1) equal to 1.
PnPolynomial ricker_pn(int n);

// Exact x^n coefficient of psi for f1 = s x e^x; must agree with
// solve_psi coefficientwise.
Rational ricker_psi_coeff(int n, const Rational& s);

// q_n pulled out of the reverted series for inspection:
// q_n = [x^n]phi * (n-1)! * prod_{k<n} (1 - s^k). No independent
// recursion exists for it.
Rational ricker_qn_value(int n, const Rational& s, const TruncatedSeries<Rational>& phi);

// Opportunistic comparison of p_n against the printed leading/lowest
// structural terms. Terms whose s-power collides with another term are
// reported as ambiguous instead of checked.
struct PnStructuralReport {
  int n = 0;
  std::vector<std::string> matched;
  std::vector<std::string> mismatched;
  std::vector<std::string> ambiguous;
};
PnStructuralReport pn_structural_report(int n);

// Integer Ricker iterates f_n of x e^x in closed nested-exponential
// form: f_{n+1} = a1 exp(a1 (1 + a2 (1 + ... (1 + a_n)))) with
// a1 = x e^x and a_{k+1} = exp(prod_{j<=k} a_j).
struct IterateChain {
  int n = 0;               // chain length
  std::vector<double> a;   // a_1 .. a_n
  double value = 0.0;      // f_{n+1}(x)
};
IterateChain ricker_iterate_chain(int n, double x);

// f_n(x); overflow is reported, never saturated.
double ricker_integer_iterate(int n, double x);

// Radius of convergence of the f_{-n} series: R_n = |f_n(-1)|.
double ricker_radius(int n);

struct CatalogEntry {
  std::string id;
  bool s_rational = true;
  Rational s_q;         // exact multiplier when rational
  double s = 0.0;       // multiplier as a real
  double x0 = 0.0;      // fixed-point shift in original coordinates
  double tau_scale = 1.0;  // physical trajectory time per engine time unit
  bool s_parameter = false;

  // Closed-form evaluators in original coordinates; absent when unknown.
  std::function<double(double)> f1;
  std::function<double(double)> psi;
  std::function<double(double)> phi;
  std::function<double(double)> backward;
  std::function<double(double, double)> trajectory;  // (x, engine t)

  // Series of the map centered on its fixed point.
  std::function<TruncatedSeries<Rational>(int)> series_q;  // null when s is irrational
  std::function<TruncatedSeries<double>(int)> series_f;

  // Exact Taylor coefficients of the centered, normalized closed-form psi.
  std::function<TruncatedSeries<Rational>(int)> psi_taylor_q;

  // Rational-domain solver route sharing this psi. The sextic multiplier
  // sqrt(2) is irrational, so its route is the doubled map f1 o f1 with
  // multiplier 2 and two engine time units per step.
  std::function<TruncatedSeries<Rational>(int)> solver_map_q;
  Rational solver_map_s;
  int solver_time_factor = 1;
};

// id in {schroder-example, ricker, quadratic, quartic, sextic}; the
// ricker entry takes its multiplier from s_param (default 2).
CatalogEntry catalog_lookup(const std::string& id, std::optional<Rational> s_param = std::nullopt);

std::vector<std::string> catalog_ids();

}  // namespace schroflow
