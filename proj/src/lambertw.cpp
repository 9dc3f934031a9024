#include "schroflow/lambertw.hpp"

#include <cmath>
#include <stdexcept>

namespace schroflow {

double lambertw_eval(double x) {
  constexpr double kInvE = 0.36787944117144233;
  if (!std::isfinite(x)) throw std::domain_error("lambertw_eval: non-finite argument");
  if (x < -kInvE) throw std::domain_error("lambertw_eval: argument below -1/e");
  if (x == 0.0) return 0.0;

  double w;
  if (std::abs(x) < 0.3) {
    w = x;
  } else if (x > 0.0) {
    w = std::log1p(x);
  } else {
    // Branch-point expansion; the log-based guess is useless this close
    // to w = -1.
    double q = 2.0 * (1.0 + std::exp(1.0) * x);
    if (q <= 0.0) return -1.0;
    w = -1.0 + std::sqrt(q);
  }

  for (int i = 0; i < 100; ++i) {
    double ew = std::exp(w);
    double f = w * ew - x;
    double fp = ew * (1.0 + w);
    double step = f / fp;
    double next = w - step;
    if (next <= -1.0) next = 0.5 * (w - 1.0);  // keep on the principal branch
    double delta = std::abs(next - w);
    w = next;
    if (delta <= 1e-14 * std::max(std::abs(w), 1e-300)) break;
  }
  return w;
}

TruncatedSeries<Rational> lambertw_series(int order) {
  TruncatedSeries<Rational> out(order);
  BigInt fact = 1;
  for (int n = 1; n <= order; ++n) {
    fact *= n;
    BigInt num = boost::multiprecision::pow(BigInt(-n), static_cast<unsigned>(n - 1));
    out[n] = Rational(num, fact);
  }
  return out;
}

}  // namespace schroflow
