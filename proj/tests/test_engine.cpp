#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "schroflow/engine.hpp"

using namespace schroflow;

namespace {

using QSeries = TruncatedSeries<Rational>;

QSeries schroder_map(int order) {
  QSeries f(order);
  if (order >= 1) f[1] = 2;
  if (order >= 2) f[2] = 2;
  return f;
}

// f1 = s x e^x
QSeries ricker_map(int order, const Rational& s) {
  QSeries f(order);
  BigInt fact = 1;
  for (int k = 1; k <= order; ++k) {
    if (k >= 2) fact *= (k - 1);
    f[k] = s / Rational(fact);
  }
  return f;
}

// Taylor series of ln(1 + 2x)/2: coefficient n is (-1)^(n+1) 2^(n-1)/n.
QSeries half_log_series(int order) {
  QSeries t(order);
  for (int n = 1; n <= order; ++n) {
    Rational c(pow_int(Rational(2), n - 1) / n);
    t[n] = (n % 2 == 0) ? -c : c;
  }
  return t;
}

// Taylor series of (e^(2x) - 1)/2: coefficient n is 2^(n-1)/n!.
QSeries half_expm1_series(int order) {
  QSeries t(order);
  BigInt fact = 1;
  for (int n = 1; n <= order; ++n) {
    fact *= n;
    t[n] = Rational(boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(n - 1)), fact);
  }
  return t;
}

}  // namespace

TEST_CASE("schroder's example solves to the closed-form series") {
  auto map = make_map(schroder_map(12));
  CHECK(map.s == Rational(2));
  auto pair = solve_psi(map, 12);
  CHECK(pair.psi == half_log_series(12));
  CHECK(pair.phi == half_expm1_series(12));
}

TEST_CASE("ricker series at s=2 and s=3/2 match the printed decimals") {
  auto pair2 = solve_psi(make_map(ricker_map(10, Rational(2))), 10);
  CHECK(to_double(pair2.psi[3]) == doctest::Approx(1.1667).epsilon(5e-4));
  CHECK(to_double(pair2.psi[4]) == doctest::Approx(-1.4524).epsilon(5e-4));
  CHECK(pair2.psi[4] == Rational(-61, 42));
  CHECK(to_double(pair2.phi[10]) == doctest::Approx(0.031734).epsilon(5e-4));

  auto pair32 = solve_psi(make_map(ricker_map(10, Rational(3, 2))), 10);
  CHECK(pair32.psi[2] == Rational(-2));
  CHECK(to_double(pair32.psi[10]) == doctest::Approx(-1803.8).epsilon(5e-4));
}

TEST_CASE("degenerate and resonant inputs") {
  QSeries linear(8);
  linear[1] = 5;
  auto pair = solve_psi(make_map(linear), 8);
  CHECK(pair.psi == QSeries::identity(8));
  CHECK(pair.phi == QSeries::identity(8));

  CHECK_THROWS_AS(solve_psi(make_map(ricker_map(6, Rational(1))), 6), ResonantMultiplier);
  try {
    solve_psi(make_map(ricker_map(6, Rational(1))), 6);
  } catch (const ResonantMultiplier& e) {
    CHECK(e.offending_power() == 2);
  }
  try {
    QSeries neg(6);
    neg[1] = -1;
    neg[2] = 1;
    solve_psi(make_map(neg), 6);
    CHECK(false);
  } catch (const ResonantMultiplier& e) {
    CHECK(e.offending_power() == 3);
  }

  QSeries singular(4);
  singular[2] = 1;  // s = 0
  CHECK_THROWS_AS(solve_psi(make_map(singular), 4), std::domain_error);

  QSeries offset(4);
  offset[0] = 1;
  offset[1] = 2;
  CHECK_THROWS_AS(make_map(offset), std::domain_error);
}

TEST_CASE("flow at t in {0, 1, -1} reproduces identity, the map, and its inverse") {
  auto map = make_map(ricker_map(10, Rational(3)));
  auto pair = solve_psi(map, 10);
  CHECK(flow_series(pair, Rational(0), 10) == QSeries::identity(10));
  CHECK(flow_series(pair, Rational(1), 10) == map.f1);

  // The t = -1 flow is the textbook Lambert series of W(x/s):
  // coefficient n is (-n)^(n-1) / (n! s^n).
  QSeries inverse = flow_series(pair, Rational(-1), 10);
  BigInt fact = 1;
  Rational spow(1);
  for (int n = 1; n <= 10; ++n) {
    fact *= n;
    spow *= 3;
    CHECK(inverse[n] ==
          Rational(boost::multiprecision::pow(BigInt(-n), static_cast<unsigned>(n - 1))) / (Rational(fact) * spow));
  }
  CHECK(compose(inverse, map.f1) == QSeries::identity(10));
}

TEST_CASE("half-iterate of the s=4 ricker map is exactly rational") {
  auto map = make_map(ricker_map(5, Rational(4)));
  auto pair = solve_psi(map, 5);
  QSeries half = flow_series(pair, Rational(1, 2), 5);
  CHECK(half[1] == Rational(2));
  CHECK(half[2] == Rational(2, 3));
  CHECK(half[3] == Rational(1, 45));
  CHECK(half[4] == Rational(1, 135));
  CHECK(half[5] == Rational(-389, 137700));

  // Composing with itself returns 4 x e^x (not 2 x e^x): the functional
  // square root of the map that was actually solved.
  QSeries twice = compose(half, half);
  CHECK(twice == map.f1);
  CHECK(twice[1] == Rational(4));
}

TEST_CASE("unrepresentable s^t in the rational domain names the way out") {
  auto pair = solve_psi(make_map(ricker_map(6, Rational(2))), 6);
  CHECK_THROWS_AS(flow_series(pair, Rational(1, 2), 6), UnrepresentablePower);
  CHECK_THROWS_AS(flow_series(pair, Rational(1, 3), 6), UnrepresentablePower);
  CHECK_NOTHROW(flow_series(pair, Rational(3), 6));
}

TEST_CASE("reduced velocity matches the independent generic-s series") {
  for (const Rational& s : {Rational(2), Rational(3, 2), Rational(5)}) {
    auto pair = solve_psi(make_map(ricker_map(5, s)), 5);
    auto vel = velocity_series(pair, 5);
    CHECK_FALSE(vel.log_factor_applied);
    const QSeries& v = vel.series;
    Rational s2 = s * s, s4 = s2 * s2;
    CHECK(v[1] == 1);
    CHECK(v[2] == Rational(1) / (s - 1));
    CHECK(v[3] == -Rational(1) / (s2 - 1));
    CHECK(v[4] == Rational(1, 2) * (3 * s + 2) / ((s2 - 1) * (s2 + s + 1)));
    CHECK(v[5] == -Rational(1, 3) * (8 * s2 + 4 * s + 3) / ((s4 - 1) * (s2 + s + 1)));
  }
}

TEST_CASE("float velocity of schroder's example equals the closed-form profile") {
  // v = ln sqrt(2) (1 + 2x) ln(1 + 2x): expand (1 + 2x) ln(1 + 2x)
  // exactly, halve, and scale by ln 2 as the oracle.
  int n = 10;
  QSeries log_series(n);
  for (int k = 1; k <= n; ++k) {
    Rational c(pow_int(Rational(2), k) / k);
    log_series[k] = (k % 2 == 0) ? -c : c;
  }
  QSeries one_plus_2x(n);
  one_plus_2x[0] = 1;
  one_plus_2x[1] = 2;
  QSeries oracle_q = scaled(one_plus_2x * log_series, Rational(1, 2));

  auto fmap = make_map(to_float_series(schroder_map(n)));
  auto fpair = solve_psi(fmap, n);
  auto vel = velocity_series(fpair, n);
  CHECK(vel.log_factor_applied);
  for (int k = 0; k <= n; ++k)
    CHECK(vel.series[k] == doctest::Approx(to_double(oracle_q[k]) * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("potential profiles follow V = -v^2 with an optional mass") {
  QSeries vx(2);
  vx[1] = 1;
  QSeries V = potential_series(vx);
  CHECK(V[2] == Rational(-1));
  CHECK(V[1] == 0);

  QSeries v6(6);
  v6[1] = 1;
  v6[3] = -1;  // v = x - x^3
  QSeries V6 = potential_series(v6);
  CHECK(V6[2] == Rational(-1));
  CHECK(V6[4] == Rational(2));
  CHECK(V6[6] == Rational(-1));

  CHECK(is_zero_series(potential_series(QSeries(4))));

  QSeries Vm = potential_series(v6, Rational(3));
  CHECK(Vm[2] == Rational(-3, 2));
}

TEST_CASE("koenigs estimates converge to the closed-form linearizer") {
  // Stable form of (sqrt(1+2x)-1)/2; the naive difference loses the
  // digits that the 2^N amplification in the estimate needs.
  auto backward = [](double x) { return x / (std::sqrt(1.0 + 2.0 * x) + 1.0); };

  auto est = koenigs_estimates(backward, 2.0, 0.0, 0.2, 30);
  REQUIRE(est.size() == 30);
  double target = 0.5 * std::log(1.4);
  CHECK(est.back() == doctest::Approx(target).epsilon(1e-8));

  auto est_neg = koenigs_estimates(backward, 2.0, 0.0, -0.4, 30);
  CHECK(est_neg.back() == doctest::Approx(0.5 * std::log(0.2)).epsilon(1e-8));

  auto zero = koenigs_estimates(backward, 2.0, 0.0, 0.0, 5);
  for (double v : zero) CHECK(v == 0.0);

  // Error drops by roughly a factor of s per iteration late in the run.
  for (size_t k = est.size() - 10; k < est.size() - 1; ++k) {
    double e0 = std::abs(est[k - 1] - target);
    double e1 = std::abs(est[k] - target);
    CHECK(e1 < e0);
    CHECK(e1 / e0 == doctest::Approx(0.5).epsilon(0.25));
  }

  CHECK_THROWS_AS(koenigs_estimates(backward, 2.0, 0.0, -0.6, 5), std::domain_error);
}

TEST_CASE("conjugacy report: exact domain is exactly zero") {
  auto map = make_map(ricker_map(10, Rational(2)));
  auto pair = solve_psi(map, 10);
  auto report = check_conjugacy(pair, map);
  CHECK(report.all_zero_in_exact_mode);
  CHECK(report.max_residual == 0.0);
  // s = 2: composition pairs needing s^(1/2) or s^(1/3) are filtered out.
  size_t compositions = 0;
  for (const auto& c : report.checks)
    if (c.name.starts_with("composition")) ++compositions;
  CHECK(compositions == 2);  // (1,-1) and (2,1)

  auto map4 = make_map(ricker_map(8, Rational(4)));
  auto report4 = check_conjugacy(solve_psi(map4, 8), map4);
  size_t compositions4 = 0;
  for (const auto& c : report4.checks)
    if (c.name.starts_with("composition")) ++compositions4;
  CHECK(compositions4 == 3);  // (1/2,1/2) joins once s^(1/2) = 2 exists
  CHECK(report4.all_zero_in_exact_mode);
}

TEST_CASE("float pair agrees with the exact pair to 1e-12 relative") {
  auto qpair = solve_psi(make_map(ricker_map(10, Rational(2))), 10);
  auto fmap = make_map(to_float_series(ricker_map(10, Rational(2))));
  auto fpair = solve_psi(fmap, 10);
  for (int k = 1; k <= 10; ++k) {
    double exact = to_double(qpair.psi[k]);
    CHECK(fpair.psi[k] == doctest::Approx(exact).epsilon(1e-12));
    CHECK(fpair.phi[k] == doctest::Approx(to_double(qpair.phi[k])).epsilon(1e-12));
  }
  auto report = check_conjugacy(fpair, fmap);
  for (const auto& c : report.checks) {
    if (c.name.starts_with("composition"))
      CHECK(c.relative() <= 1e-10);
    else
      CHECK(c.relative() <= 1e-11);
  }
}

TEST_CASE("a perturbed coefficient shows up at exactly its own order") {
  auto map = make_map(ricker_map(8, Rational(2)));
  auto pair = solve_psi(map, 8);
  pair.psi[4] += Rational(1, 1000);
  QSeries residual = scaled(pair.psi, map.s) - compose(pair.psi, map.f1);
  for (int k = 0; k <= 3; ++k) CHECK(residual[k] == 0);
  CHECK(residual[4] != 0);
}

TEST_CASE("finite differences of the flow converge to the velocity") {
  auto fmap = make_map(to_float_series(ricker_map(10, Rational(2))));
  auto fpair = solve_psi(fmap, 10);
  auto v = velocity_series(fpair, 10).series;

  auto fd_error = [&](double dt) {
    TruncatedSeries<double> fd = flow_series(fpair, dt, 10) - TruncatedSeries<double>::identity(10);
    double err = 0.0;
    for (int k = 0; k <= 10; ++k) err = std::max(err, std::abs(fd[k] / dt - v[k]));
    return err;
  };
  double e3 = fd_error(1e-3), e4 = fd_error(1e-4);
  CHECK(e3 / e4 == doctest::Approx(10.0).epsilon(0.2));
  CHECK(e3 <= 0.05);  // error ~ C dt with C of order the second t-derivative
}
