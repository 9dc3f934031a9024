#pragma once

#include <string>
#include <vector>

#include "schroflow/catalog.hpp"
#include "schroflow/engine.hpp"

namespace schroflow {

struct GridProvenance {
  std::string map;
  int order = 0;
  std::string domain;
  std::string s;
  std::string method;  // "closed-form" | "flow-series" | "eps-jet-limit"
  double max_tail_estimate = 0.0;
};

// Rectangular sample of f_t(x); rows are fixed t (t-major), cells that
// fall outside a map's real domain hold NaN.
struct FlowGrid {
  double x_min = 0.0, x_max = 0.0;
  int nx = 0;
  Rational t_min, t_max;
  int nt = 0;
  std::vector<double> values;  // nt * nx
  GridProvenance prov;

  double at(int it, int ix) const { return values[static_cast<size_t>(it) * nx + ix]; }
  double t_at(int it) const;
  Rational t_rational_at(int it) const;
  double x_at(int ix) const;
};

struct GridRanges {
  double x_min = 0.0, x_max = 0.0;
  int nx = 0;
  Rational t_min, t_max;
  int nt = 0;
};

// Each t-slice is independent; `parallel` selects the OpenMP fill, the
// serial fill is the reference. Both produce identical bytes.
FlowGrid grid_from_trajectory(const CatalogEntry& entry, const GridRanges& ranges, bool parallel = true);

FlowGrid grid_from_flow(const ConjugacyPair<double>& pair, double x0, const GridRanges& ranges,
                        GridProvenance prov, bool parallel = true);

FlowGrid grid_from_flow_limit(const ConjugacyPair<EpsJet>& pair, double x0, const GridRanges& ranges,
                              GridProvenance prov, bool parallel = true);

}  // namespace schroflow
