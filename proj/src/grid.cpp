#include "schroflow/grid.hpp"

#include <cmath>
#include <limits>

namespace schroflow {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

Rational t_step(const GridRanges& r) {
  if (r.nt <= 1) return Rational(0);
  return (r.t_max - r.t_min) / (r.nt - 1);
}

double x_step(const GridRanges& r) {
  if (r.nx <= 1) return 0.0;
  return (r.x_max - r.x_min) / (r.nx - 1);
}

void check_ranges(const GridRanges& r) {
  if (r.nx < 1 || r.nt < 1) throw std::domain_error("grid needs nx >= 1 and nt >= 1");
}

FlowGrid make_grid(const GridRanges& r, GridProvenance prov) {
  FlowGrid g;
  g.x_min = r.x_min;
  g.x_max = r.x_max;
  g.nx = r.nx;
  g.t_min = r.t_min;
  g.t_max = r.t_max;
  g.nt = r.nt;
  g.values.assign(static_cast<size_t>(r.nx) * r.nt, kMissing);
  g.prov = std::move(prov);
  return g;
}

// Fans the slice worker out over t; results land by index, so the degree
// of parallelism never changes the output.
template <class SliceFn>
void fill_slices(int nt, bool parallel, const SliceFn& slice) {
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int it = 0; it < nt; ++it) slice(it);
  } else {
    for (int it = 0; it < nt; ++it) slice(it);
  }
}

}  // namespace

double FlowGrid::t_at(int it) const { return to_double(t_rational_at(it)); }

Rational FlowGrid::t_rational_at(int it) const {
  if (nt <= 1) return t_min;
  return t_min + (t_max - t_min) * it / (nt - 1);
}

double FlowGrid::x_at(int ix) const {
  if (nx <= 1) return x_min;
  return x_min + (x_max - x_min) / (nx - 1) * ix;
}

FlowGrid grid_from_trajectory(const CatalogEntry& entry, const GridRanges& ranges, bool parallel) {
  check_ranges(ranges);
  if (!entry.trajectory) throw std::domain_error("catalog entry '" + entry.id + "' has no closed-form trajectory");
  GridProvenance prov;
  prov.map = entry.id;
  prov.domain = "float";
  prov.s = DomainTraits<double>::str(entry.s);
  prov.method = "closed-form";
  FlowGrid grid = make_grid(ranges, std::move(prov));

  double dx = x_step(ranges);
  Rational dt = t_step(ranges);
  fill_slices(ranges.nt, parallel, [&](int it) {
    double t = to_double(ranges.t_min + dt * it);
    for (int ix = 0; ix < ranges.nx; ++ix) {
      double v = entry.trajectory(ranges.x_min + dx * ix, t);
      grid.values[static_cast<size_t>(it) * ranges.nx + ix] = std::isfinite(v) ? v : kMissing;
    }
  });
  return grid;
}

FlowGrid grid_from_flow(const ConjugacyPair<double>& pair, double x0, const GridRanges& ranges, GridProvenance prov,
                        bool parallel) {
  check_ranges(ranges);
  prov.method = "flow-series";
  FlowGrid grid = make_grid(ranges, std::move(prov));

  double dx = x_step(ranges);
  Rational dt = t_step(ranges);
  std::vector<double> tails(static_cast<size_t>(ranges.nt), 0.0);
  fill_slices(ranges.nt, parallel, [&](int it) {
    double t = to_double(ranges.t_min + dt * it);
    TruncatedSeries<double> ft = flow_series(pair, t, pair.order);
    double tail = 0.0;
    for (int ix = 0; ix < ranges.nx; ++ix) {
      EvalResult r = evaluate(ft, ranges.x_min + dx * ix - x0);
      double v = r.value + x0;
      grid.values[static_cast<size_t>(it) * ranges.nx + ix] = std::isfinite(v) ? v : kMissing;
      if (r.tail_reliable) tail = std::max(tail, r.tail_estimate);
    }
    tails[static_cast<size_t>(it)] = tail;
  });
  for (double t : tails) grid.prov.max_tail_estimate = std::max(grid.prov.max_tail_estimate, t);
  return grid;
}

FlowGrid grid_from_flow_limit(const ConjugacyPair<EpsJet>& pair, double x0, const GridRanges& ranges,
                              GridProvenance prov, bool parallel) {
  check_ranges(ranges);
  prov.method = "eps-jet-limit";
  FlowGrid grid = make_grid(ranges, std::move(prov));

  double dx = x_step(ranges);
  Rational dt = t_step(ranges);
  std::vector<double> tails(static_cast<size_t>(ranges.nt), 0.0);
  // Keep the first slice failure rather than racing on throw.
  std::exception_ptr failure = nullptr;
  fill_slices(ranges.nt, parallel, [&](int it) {
    try {
      Rational t = ranges.t_min + dt * it;
      TruncatedSeries<Rational> ft = flow_limit_s_to_1(pair, t, pair.order);
      TruncatedSeries<double> ftd = to_float_series(ft);
      double tail = 0.0;
      for (int ix = 0; ix < ranges.nx; ++ix) {
        EvalResult r = evaluate(ftd, ranges.x_min + dx * ix - x0);
        double v = r.value + x0;
        grid.values[static_cast<size_t>(it) * ranges.nx + ix] = std::isfinite(v) ? v : kMissing;
        if (r.tail_reliable) tail = std::max(tail, r.tail_estimate);
      }
      tails[static_cast<size_t>(it)] = tail;
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  });
  if (failure) std::rethrow_exception(failure);
  for (double t : tails) grid.prov.max_tail_estimate = std::max(grid.prov.max_tail_estimate, t);
  return grid;
}

}  // namespace schroflow
