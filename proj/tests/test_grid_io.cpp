#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "schroflow/grid.hpp"
#include "schroflow/io.hpp"

using namespace schroflow;

namespace {

GridRanges small_ranges() {
  GridRanges r;
  r.x_min = -0.5;
  r.x_max = 0.5;
  r.nx = 5;
  r.t_min = Rational(0);
  r.t_max = Rational(1);
  r.nt = 5;
  return r;
}

ConjugacyPair<double> ricker_float_pair(int order, double s) {
  TruncatedSeries<double> f(order);
  double fact = 1.0;
  for (int k = 1; k <= order; ++k) {
    if (k >= 2) fact *= (k - 1);
    f[k] = s / fact;
  }
  return solve_psi(make_map(std::move(f)), order);
}

}  // namespace

TEST_CASE("closed-form grid: identity edge, fixed-point columns, known cells") {
  auto entry = catalog_lookup("schroder-example");
  FlowGrid g = grid_from_trajectory(entry, small_ranges());

  // t = 0 row is the identity map
  for (int ix = 0; ix < g.nx; ++ix) CHECK(g.at(0, ix) == doctest::Approx(g.x_at(ix)).epsilon(1e-14));

  // columns over the fixed points x = 0 and x = -1/2 stay put
  for (int it = 0; it < g.nt; ++it) {
    CHECK(g.at(it, 2) == doctest::Approx(0.0));
    CHECK(g.at(it, 0) == doctest::Approx(-0.5).epsilon(1e-13));
  }

  // f_1(1/2) = 3/2
  CHECK(g.at(4, 4) == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("cells outside the real domain are missing, not fatal") {
  auto entry = catalog_lookup("schroder-example");
  GridRanges r = small_ranges();
  r.x_min = -1.0;  // 1 + 2x < 0 for x < -1/2 and fractional exponents
  r.nx = 5;
  FlowGrid g = grid_from_trajectory(entry, r);
  CHECK(std::isnan(g.at(1, 0)));       // x = -1, t = 1/4
  CHECK_FALSE(std::isnan(g.at(1, 4))); // x = 0.5 is fine
  std::string csv = grid_to_csv(g);
  CHECK(csv.find("nan") != std::string::npos);
}

TEST_CASE("flow-series grid agrees with the closed form inside the disk") {
  auto entry = catalog_lookup("schroder-example");
  GridRanges r;
  r.x_min = -0.2;
  r.x_max = 0.2;
  r.nx = 5;
  r.t_min = Rational(0);
  r.t_max = Rational(1);
  r.nt = 3;
  auto fpair = solve_psi(make_map(entry.series_f(24)), 24);
  GridProvenance prov;
  prov.map = entry.id;
  prov.order = 24;
  prov.domain = "float";
  prov.s = "2";
  FlowGrid series_grid = grid_from_flow(fpair, entry.x0, r, prov);
  FlowGrid closed_grid = grid_from_trajectory(entry, r);
  for (int it = 0; it < r.nt; ++it)
    for (int ix = 0; ix < r.nx; ++ix)
      CHECK(series_grid.at(it, ix) == doctest::Approx(closed_grid.at(it, ix)).epsilon(1e-10));
  CHECK(series_grid.prov.max_tail_estimate < 1e-8);
}

TEST_CASE("eps-jet grid rows are exact flow limits") {
  TruncatedSeries<Rational> unit(8);
  BigInt fact = 1;
  for (int k = 1; k <= 8; ++k) {
    if (k >= 2) fact *= (k - 1);
    unit[k] = Rational(1, fact);
  }
  auto pair = solve_psi(epsjet_augment(unit), 8);
  GridRanges r;
  r.x_min = -0.5;
  r.x_max = 0.5;
  r.nx = 3;
  r.t_min = Rational(0);
  r.t_max = Rational(1);
  r.nt = 3;
  GridProvenance prov;
  prov.map = "ricker";
  prov.order = 8;
  prov.domain = "epsjet";
  prov.s = "exp(eps)";
  FlowGrid g = grid_from_flow_limit(pair, 0.0, r, prov);

  CHECK(g.at(0, 0) == -0.5);  // identity row is exact here
  CHECK(g.at(0, 2) == 0.5);
  TruncatedSeries<Rational> half = flow_limit_s_to_1(pair, Rational(1, 2), 8);
  CHECK(g.at(1, 2) == doctest::Approx(evaluate(half, 0.5).value).epsilon(1e-15));
  for (int it = 0; it < 3; ++it) CHECK(g.at(it, 1) == 0.0);
}

TEST_CASE("parallel and serial grid fills are byte-identical") {
  auto pair = ricker_float_pair(16, 2.0);
  GridRanges r;
  r.x_min = -0.8;
  r.x_max = 0.8;
  r.nx = 33;
  r.t_min = Rational(-1);
  r.t_max = Rational(2);
  r.nt = 21;
  GridProvenance prov;
  prov.map = "ricker";
  prov.order = 16;
  prov.domain = "float";
  prov.s = "2";
  FlowGrid parallel = grid_from_flow(pair, 0.0, r, prov, true);
  FlowGrid serial = grid_from_flow(pair, 0.0, r, prov, false);
  CHECK(grid_to_csv(parallel) == grid_to_csv(serial));
  CHECK(dump_json(grid_to_json(parallel)) == dump_json(grid_to_json(serial)));
}

TEST_CASE("slices regenerated individually equal the full-grid rows") {
  auto pair = ricker_float_pair(12, 2.0);
  GridRanges r;
  r.x_min = -0.5;
  r.x_max = 0.5;
  r.nx = 7;
  r.t_min = Rational(0);
  r.t_max = Rational(2);
  r.nt = 9;
  GridProvenance prov;
  prov.map = "ricker";
  prov.order = 12;
  prov.domain = "float";
  prov.s = "2";
  FlowGrid full = grid_from_flow(pair, 0.0, r, prov);
  for (int it : {0, 3, 8}) {
    GridRanges slice = r;
    slice.t_min = slice.t_max = full.t_rational_at(it);
    slice.nt = 1;
    FlowGrid one = grid_from_flow(pair, 0.0, slice, prov);
    for (int ix = 0; ix < r.nx; ++ix) CHECK(one.at(0, ix) == full.at(it, ix));
  }
}

TEST_CASE("csv layout is long-form, t-major, with a fixed header") {
  auto entry = catalog_lookup("quadratic");
  GridRanges r;
  r.x_min = 0.0;
  r.x_max = 1.0;
  r.nx = 2;
  r.t_min = Rational(0);
  r.t_max = Rational(1);
  r.nt = 2;
  std::string csv = grid_to_csv(grid_from_trajectory(entry, r));
  CHECK(csv == "x,t,value\n"
               "0,0,0\n"
               "1,0,1\n"
               "0,1,0\n"
               "1,1,2\n");
}

TEST_CASE("rational series round-trips bit-exactly through json") {
  TruncatedSeries<Rational> s(4);
  s[1] = Rational(2);
  s[2] = Rational(-61, 42);
  s[4] = Rational(1, 137700);
  Json j = series_to_json(s, "2/1");
  CHECK(j.at("variable") == "x");
  CHECK(j.at("order") == 4);
  CHECK(j.at("domain") == "rational");
  CHECK(j.at("s") == "2/1");
  TruncatedSeries<Rational> back = rational_series_from_json(j);
  CHECK(back == s);

  std::string text = dump_json(j);
  CHECK(text == dump_json(series_to_json(rational_series_from_json(Json::parse(text)), "2/1")));
  CHECK(text.back() == '\n');
  CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("jet series serialize as ordered power pairs") {
  TruncatedSeries<EpsJet> s(2);
  s[1] = EpsJet(Rational(1));
  s[2] = EpsJet::from_coeffs(-1, {Rational(-1), Rational(1, 2)}, 1);
  Json j = series_to_json(s, "exp(eps)");
  CHECK(j.at("domain") == "epsjet");
  const Json& c2 = j.at("coefficients").at(2);
  CHECK(c2.at(0).at(0) == -1);
  CHECK(c2.at(0).at(1) == "-1/1");
  CHECK(c2.at(1).at(1) == "1/2");
}

TEST_CASE("float formatting is %.17g everywhere") {
  CHECK(format_double(1.5) == "1.5");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(std::nan("")) == "nan");
  TruncatedSeries<double> s(1);
  s[1] = 1.0 / 3.0;
  CHECK(series_to_json(s, "x").at("coefficients").at(1) == "0.33333333333333331");
}

TEST_CASE("series and report csv forms") {
  TruncatedSeries<Rational> s(2);
  s[1] = Rational(1);
  s[2] = Rational(-1, 2);
  CHECK(series_to_csv(s) == "k,coefficient\n0,0/1\n1,1/1\n2,-1/2\n");

  TruncatedSeries<Rational> f(6);
  BigInt fact = 1;
  f[1] = 2;
  for (int k = 2; k <= 6; ++k) {
    fact *= (k - 1);
    f[k] = Rational(2, fact);
  }
  auto map = make_map(std::move(f));
  auto report = check_conjugacy(solve_psi(map, 6), map);
  std::string csv = report_to_csv(report);
  CHECK(csv.starts_with("check,max_residual,relative,exact_zero\n"));
  CHECK(csv.find("schroeder,0,0,true") != std::string::npos);
}

TEST_CASE("write_output reaches the filesystem") {
  std::string path = "/tmp/schroflow_io_test.csv";
  std::remove(path.c_str());
  size_t n = write_output("x,t,value\n", path);
  CHECK(n == 10);
  std::ifstream in(path, std::ios::binary);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "x,t,value\n");
  std::remove(path.c_str());
}
