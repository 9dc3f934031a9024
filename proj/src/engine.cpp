#include "schroflow/engine.hpp"

#include <cmath>

namespace schroflow {

MapSpec<EpsJet> epsjet_augment(const TruncatedSeries<Rational>& f1_unit, int window) {
  if (f1_unit.order() < 1 || f1_unit[1] != 1)
    throw std::domain_error("eps-jet mode requires a map with unit multiplier (linear coefficient 1)");
  if (f1_unit[0] != 0) throw std::domain_error("no fixed point at origin: f1(0) != 0");
  if (window < 0) throw std::domain_error("jet window must be >= 0");
  int base_trunc = f1_unit.order() + window + 2;
  EpsJet s = jet_exp(EpsJet::monomial(1, Rational(1), base_trunc));
  TruncatedSeries<EpsJet> f1(f1_unit.order());
  for (int k = 1; k <= f1_unit.order(); ++k)
    if (f1_unit[k] != 0) f1[k] = s.scaled(f1_unit[k]);
  return make_map(std::move(f1), 0.0, "s=exp(eps)");
}

TruncatedSeries<Rational> limit_s_to_1(const TruncatedSeries<EpsJet>& a) {
  TruncatedSeries<Rational> out(a.order());
  for (int k = 0; k <= a.order(); ++k) {
    const EpsJet& jet = a[k];
    if (!jet.is_zero() && jet.lowest_power() < 0)
      throw InternalConsistencyError("surviving eps^" + std::to_string(jet.lowest_power()) +
                                     " pole in the x^" + std::to_string(k) +
                                     " coefficient; jet window too narrow or algebra inconsistent");
    if (jet.truncation() < 0)
      throw InternalConsistencyError("jet window for the x^" + std::to_string(k) +
                                     " coefficient ends before eps^0; increase the window");
    out[k] = jet.coeff(0);
  }
  return out;
}

TruncatedSeries<Rational> flow_limit_s_to_1(const ConjugacyPair<EpsJet>& pair, const Rational& t, int order) {
  return limit_s_to_1(flow_series(pair, t, order));
}

std::vector<double> koenigs_estimates(const std::function<double(double)>& backward_step, double s, double x0,
                                      double x, int iterations) {
  if (iterations < 1) throw std::domain_error("koenigs_estimates needs at least one iteration");
  std::vector<double> estimates;
  estimates.reserve(static_cast<size_t>(iterations));
  double y = x;
  double spow = 1.0;
  for (int k = 1; k <= iterations; ++k) {
    y = backward_step(y);
    if (!std::isfinite(y)) throw std::domain_error("backward iterate left the real domain");
    spow *= s;
    estimates.push_back(spow * (y - x0));
  }
  return estimates;
}

}  // namespace schroflow
