#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "schroflow/engine.hpp"

using namespace schroflow;

namespace {

using QSeries = TruncatedSeries<Rational>;

// x e^x with unit multiplier, ready for s = e^eps augmentation.
QSeries ricker_unit(int order) {
  QSeries f(order);
  BigInt fact = 1;
  for (int k = 1; k <= order; ++k) {
    if (k >= 2) fact *= (k - 1);
    f[k] = Rational(1, fact);
  }
  return f;
}

QSeries xex_series(int order) { return ricker_unit(order); }

struct FtParts {
  Rational eps0;
  Rational eps1;
};

// Flow coefficients of the augmented ricker map expanded in eps, per
// order in x. t enters polynomially.
FtParts ft_reference(int n, const Rational& t) {
  switch (n) {
    case 1:
      return {Rational(1), t};
    case 2:
      return {t, Rational(1, 2) * (3 * t - 1) * t};
    case 3:
      return {Rational(1, 2) * (2 * t - 1) * t, Rational(1, 2) * (2 * t - 1) * (2 * t - 1) * t};
    case 4:
      return {Rational(1, 12) * (12 * t * t - 15 * t + 5) * t,
              Rational(1, 12) * (30 * t * t * t - 56 * t * t + 35 * t - 7) * t};
    case 5:
      return {Rational(1, 24) * (3 * t - 2) * (8 * t * t - 12 * t + 5) * t,
              Rational(1, 72) * (216 * t * t * t * t - 621 * t * t * t + 673 * t * t - 315 * t + 50) * t};
    default:
      throw std::logic_error("no reference coefficient");
  }
}

}  // namespace

TEST_CASE("augmentation requires a unit multiplier") {
  QSeries bad(4);
  bad[1] = 2;
  CHECK_THROWS_AS(epsjet_augment(bad), std::domain_error);
  CHECK_NOTHROW(epsjet_augment(ricker_unit(4)));
}

TEST_CASE("jet-mode psi carries the known pole structure") {
  auto map = epsjet_augment(ricker_unit(10));
  auto pair = solve_psi(map, 10);

  // x^2 coefficient is -1/(s-1) = -1/(e^eps - 1): Bernoulli numbers again.
  const EpsJet& c2 = pair.psi[2];
  CHECK(c2.lowest_power() == -1);
  CHECK(c2.coeff(-1) == -1);
  CHECK(c2.coeff(0) == Rational(1, 2));
  CHECK(c2.coeff(1) == Rational(-1, 12));

  for (int n = 2; n <= 10; ++n) CHECK(pair.psi[n].lowest_power() >= -(n - 1));

  // Enough regular headroom survived the solve for the default window.
  for (int n = 1; n <= 10; ++n) CHECK(pair.psi[n].truncation() >= 2);
}

TEST_CASE("flow coefficients expanded in eps match the reference polynomials") {
  auto map = epsjet_augment(ricker_unit(5));
  auto pair = solve_psi(map, 5);
  for (const Rational& t :
       {Rational(0), Rational(1), Rational(-1), Rational(1, 2), Rational(2)}) {
    TruncatedSeries<EpsJet> ft = flow_series(pair, t, 5);
    for (int n = 1; n <= 5; ++n) {
      const EpsJet& jet = ft[n];
      if (!jet.is_zero()) CHECK(jet.lowest_power() >= 0);
      REQUIRE(jet.truncation() >= 1);
      FtParts ref = ft_reference(n, t);
      CHECK(jet.coeff(0) == ref.eps0);
      CHECK(jet.coeff(1) == ref.eps1);
    }
  }
}

TEST_CASE("the s->1 limit of the flow is the pole-cancelled eps^0 part") {
  auto map = epsjet_augment(ricker_unit(10));
  auto pair = solve_psi(map, 10);

  CHECK(flow_limit_s_to_1(pair, Rational(0), 10) == QSeries::identity(10));
  CHECK(flow_limit_s_to_1(pair, Rational(1), 10) == xex_series(10));

  // Fractional times produce genuine interpolants; spot the x^2 and x^3
  // coefficients at t = 1/2 against the reference polynomials.
  QSeries half = flow_limit_s_to_1(pair, Rational(1, 2), 10);
  CHECK(half[1] == 1);
  CHECK(half[2] == Rational(1, 2));
  CHECK(half[3] == 0);  // (1/2)(2t-1)t vanishes at t = 1/2
  CHECK(half[4] == ft_reference(4, Rational(1, 2)).eps0);
}

TEST_CASE("surviving poles and exhausted windows are internal errors") {
  TruncatedSeries<EpsJet> poisoned(2);
  poisoned[1] = EpsJet::monomial(-1, Rational(3), 2);
  CHECK_THROWS_AS(limit_s_to_1(poisoned), InternalConsistencyError);

  TruncatedSeries<EpsJet> exhausted(1);
  exhausted[1] = EpsJet().with_truncation(-1);
  CHECK_THROWS_AS(limit_s_to_1(exhausted), InternalConsistencyError);
}

TEST_CASE("velocity in the s->1 limit") {
  auto map = epsjet_augment(ricker_unit(10));
  auto pair = solve_psi(map, 10);
  auto vel = velocity_series(pair, 10);
  CHECK(vel.log_factor_applied);
  QSeries v = limit_s_to_1(vel.series);

  CHECK(v[1] == 0);
  CHECK(v[2] == 1);
  CHECK(v[3] == Rational(-1, 2));
  CHECK(v[4] == Rational(5, 12));
  CHECK(v[5] == Rational(-5, 12));

  // Printed decimals for x^6..x^10.
  const double printed[] = {0.44583, -0.48056, 0.50112, -0.49163, 0.45215};
  for (int k = 6; k <= 10; ++k)
    CHECK(to_double(v[k]) == doctest::Approx(printed[k - 6]).epsilon(5e-4));
}

TEST_CASE("conjugacy residuals vanish identically in jet mode") {
  auto map = epsjet_augment(ricker_unit(8));
  auto pair = solve_psi(map, 8);
  auto report = check_conjugacy(pair, map);
  CHECK(report.all_zero_in_exact_mode);
  CHECK(report.max_residual == 0.0);
  size_t compositions = 0;
  for (const auto& c : report.checks)
    if (c.name.starts_with("composition")) ++compositions;
  CHECK(compositions == 4);  // every rational t is representable as e^(t eps)
}

TEST_CASE("order-10 derivative diagnostics at the branch point x = -1") {
  auto map = epsjet_augment(ricker_unit(10));
  auto pair = solve_psi(map, 10);

  // At t = 1 the limit is x e^x itself, and the truncated-series
  // derivative at -1 telescopes to -2.7557e-6.
  QSeries f1 = flow_limit_s_to_1(pair, Rational(1), 10);
  TruncatedSeries<Rational> d = derivative(f1);
  double at_minus_1 = evaluate(d, -1.0).value;
  CHECK(at_minus_1 == doctest::Approx(-2.7557e-6).epsilon(1e-3));
}
