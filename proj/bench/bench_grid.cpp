// Compares the serial reference grid fill against the OpenMP one on the
// two series-backed surface routes and checks that outputs match.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "schroflow/grid.hpp"
#include "schroflow/io.hpp"

using namespace schroflow;

namespace {

void report(const std::string& name, const std::function<FlowGrid(bool)>& make) {
  auto timed = [&](bool parallel, double& ms) {
    auto t0 = std::chrono::steady_clock::now();
    FlowGrid g = make(parallel);
    auto t1 = std::chrono::steady_clock::now();
    ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return g;
  };
  double serial_ms = 0.0, parallel_ms = 0.0;
  FlowGrid serial = timed(false, serial_ms);
  FlowGrid parallel = timed(true, parallel_ms);
  bool identical = grid_to_csv(serial) == grid_to_csv(parallel);
  std::printf("%-24s %10.1f ms %10.1f ms   x%.2f   outputs %s\n", name.c_str(), serial_ms, parallel_ms,
              serial_ms / parallel_ms, identical ? "identical" : "DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run the serial fill\n");
#endif
  std::printf("%-24s %13s %13s\n", "route", "serial", "parallel");

  {
    TruncatedSeries<double> f(48);
    f[1] = 2.0;
    f[2] = 2.0;
    auto pair = solve_psi(make_map(std::move(f)), 48);
    GridRanges r;
    r.x_min = -0.45;
    r.x_max = 0.45;
    r.nx = 1024;
    r.t_min = Rational(-1);
    r.t_max = Rational(2);
    r.nt = 1024;
    GridProvenance prov{"schroder-example", 48, "float", "2", "", 0.0};
    report("float flow series", [&](bool parallel) { return grid_from_flow(pair, 0.0, r, prov, parallel); });
  }

  {
    TruncatedSeries<Rational> unit(10);
    BigInt fact = 1;
    for (int k = 1; k <= 10; ++k) {
      if (k >= 2) fact *= (k - 1);
      unit[k] = Rational(1, fact);
    }
    auto pair = solve_psi(epsjet_augment(unit), 10);
    GridRanges r;
    r.x_min = -0.9;
    r.x_max = 0.5;
    r.nx = 256;
    r.t_min = Rational(0);
    r.t_max = Rational(1);
    r.nt = 24;
    GridProvenance prov{"ricker", 10, "epsjet", "exp(eps)", "", 0.0};
    report("eps-jet limit", [&](bool parallel) { return grid_from_flow_limit(pair, 0.0, r, prov, parallel); });
  }

  return 0;
}
