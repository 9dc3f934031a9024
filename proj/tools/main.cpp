// Command-line front end: series solving, iterates, velocity/potential
// profiles, evolution surfaces, Koenigs estimates, p_n polynomials and
// invariant checks, with deterministic JSON/CSV export.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "schroflow/catalog.hpp"
#include "schroflow/engine.hpp"
#include "schroflow/grid.hpp"
#include "schroflow/io.hpp"

using namespace schroflow;

namespace {

enum class Domain { kRational, kFloat, kEpsJet };

const char* domain_name(Domain d) {
  switch (d) {
    case Domain::kRational: return "rational";
    case Domain::kFloat: return "float";
    default: return "epsjet";
  }
}

struct CommonOpts {
  std::string map_spec = "ricker";
  std::string s_text;
  int order = 10;
  int eps_window = -1;  // >= 0 switches to s = e^eps mode
  bool use_float = false;
  std::string format = "json";
  std::string out = "-";
};

int default_order() {
  if (const char* env = std::getenv("SCHROFLOW_ORDER")) {
    int v = std::atoi(env);
    if (v >= 1 && v <= 64) return v;
  }
  return 10;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_map = true) {
  if (with_map) {
    cmd->add_option("--map", opts.map_spec, "catalog id or poly:c1,c2,... (coefficients of x, x^2, ...)");
    cmd->add_option("--s", opts.s_text, "multiplier as a rational (ricker and poly maps)");
    cmd->add_option("--eps-jet", opts.eps_window, "solve with s = e^eps; argument is the regular jet window K");
    cmd->add_flag("--float", opts.use_float, "use the float coefficient domain");
  }
  cmd->add_option("--order", opts.order, "truncation order N")->check(CLI::Range(1, 64));
  cmd->add_option("--format", opts.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opts.out, "output path, or - for stdout");
}

struct ResolvedMap {
  Domain domain = Domain::kRational;
  std::string descriptor;
  std::string s_descriptor;
  double x0 = 0.0;
  std::optional<CatalogEntry> entry;
  std::optional<MapSpec<Rational>> map_q;
  std::optional<MapSpec<double>> map_f;
  std::optional<MapSpec<EpsJet>> map_j;
};

TruncatedSeries<Rational> parse_poly_coeffs(const std::string& body, int order) {
  std::vector<Rational> coeffs;
  size_t pos = 0;
  while (pos <= body.size()) {
    size_t comma = body.find(',', pos);
    std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    coeffs.push_back(rational_from_string(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  int n = std::max<int>(order, static_cast<int>(coeffs.size()));
  TruncatedSeries<Rational> f(n);
  for (size_t k = 0; k < coeffs.size(); ++k) f[static_cast<int>(k) + 1] = coeffs[k];
  return f;
}

ResolvedMap resolve_map(const CommonOpts& opts) {
  if (opts.use_float && opts.eps_window >= 0)
    throw std::domain_error("--float and --eps-jet are mutually exclusive");
  ResolvedMap rm;
  rm.domain = opts.eps_window >= 0 ? Domain::kEpsJet : (opts.use_float ? Domain::kFloat : Domain::kRational);
  rm.descriptor = opts.map_spec;

  std::optional<Rational> s_opt;
  if (!opts.s_text.empty()) s_opt = rational_from_string(opts.s_text);

  TruncatedSeries<Rational> base(1);
  if (opts.map_spec.rfind("poly:", 0) == 0) {
    base = parse_poly_coeffs(opts.map_spec.substr(5), opts.order);
    if (s_opt && *s_opt != base[1])
      throw std::domain_error("--s disagrees with the linear coefficient of the polynomial map");
  } else {
    CatalogEntry entry = catalog_lookup(opts.map_spec, s_opt);
    if (s_opt && !entry.s_parameter && (!entry.s_rational || entry.s_q != *s_opt))
      throw std::domain_error("catalog map '" + entry.id + "' has a fixed multiplier");
    rm.x0 = entry.x0;
    if (rm.domain == Domain::kEpsJet) {
      if (entry.id != "ricker")
        throw std::domain_error("eps-jet mode needs a unit-multiplier map; of the catalog only ricker qualifies");
      TruncatedSeries<Rational> unit(opts.order);
      BigInt fact = 1;
      for (int k = 1; k <= opts.order; ++k) {
        if (k >= 2) fact *= (k - 1);
        unit[k] = Rational(1, fact);
      }
      base = unit;
    } else if (rm.domain == Domain::kFloat) {
      rm.map_f = make_map(entry.series_f(opts.order), entry.x0, entry.id);
      rm.s_descriptor = format_double(rm.map_f->s);
      rm.entry = std::move(entry);
      return rm;
    } else {
      if (!entry.series_q)
        throw std::domain_error("catalog map '" + entry.id +
                                "' has an irrational multiplier; use --float (or its doubled exact form)");
      base = entry.series_q(opts.order);
    }
    rm.entry = std::move(entry);
  }

  switch (rm.domain) {
    case Domain::kEpsJet:
      rm.map_j = epsjet_augment(base, opts.eps_window);
      rm.s_descriptor = "exp(eps)";
      break;
    case Domain::kFloat:
      rm.map_f = make_map(to_float_series(base), rm.x0, rm.descriptor);
      rm.s_descriptor = format_double(rm.map_f->s);
      break;
    case Domain::kRational:
      rm.map_q = make_map(base, rm.x0, rm.descriptor);
      rm.s_descriptor = to_string(rm.map_q->s);
      break;
  }
  return rm;
}

Rational parse_time(const std::string& text) {
  if (text.empty()) throw std::domain_error("--t is required");
  return rational_from_string(text);
}

void emit(const CommonOpts& opts, const Json& doc, const std::string& csv) {
  if (opts.format == "csv") {
    if (csv.empty()) throw std::domain_error("csv output is not defined for this command");
    write_output(csv, opts.out);
  } else {
    write_output(dump_json(doc), opts.out);
  }
}

// ---- subcommands ----

int run_solve(const CommonOpts& opts) {
  ResolvedMap rm = resolve_map(opts);
  Json doc;
  std::string csv;
  switch (rm.domain) {
    case Domain::kRational: {
      auto pair = solve_psi(*rm.map_q, opts.order);
      doc["psi"] = series_to_json(pair.psi, rm.s_descriptor);
      doc["phi"] = series_to_json(pair.phi, rm.s_descriptor);
      csv = series_to_csv(pair.psi);
      break;
    }
    case Domain::kFloat: {
      auto pair = solve_psi(*rm.map_f, opts.order);
      doc["psi"] = series_to_json(pair.psi, rm.s_descriptor);
      doc["phi"] = series_to_json(pair.phi, rm.s_descriptor);
      csv = series_to_csv(pair.psi);
      break;
    }
    case Domain::kEpsJet: {
      auto pair = solve_psi(*rm.map_j, opts.order);
      doc["psi"] = series_to_json(pair.psi, rm.s_descriptor);
      doc["phi"] = series_to_json(pair.phi, rm.s_descriptor);
      csv = series_to_csv(pair.psi);
      break;
    }
  }
  emit(opts, doc, csv);
  return 0;
}

int run_iterate(const CommonOpts& opts, const std::string& t_text) {
  ResolvedMap rm = resolve_map(opts);
  Rational t = parse_time(t_text);
  Json doc;
  std::string csv;
  switch (rm.domain) {
    case Domain::kRational: {
      auto pair = solve_psi(*rm.map_q, opts.order);
      auto flow = flow_series(pair, t, opts.order);
      doc["t"] = to_string(t);
      doc["flow"] = series_to_json(flow, rm.s_descriptor);
      csv = series_to_csv(flow);
      break;
    }
    case Domain::kFloat: {
      auto pair = solve_psi(*rm.map_f, opts.order);
      auto flow = flow_series(pair, to_double(t), opts.order);
      doc["t"] = to_string(t);
      doc["flow"] = series_to_json(flow, rm.s_descriptor);
      csv = series_to_csv(flow);
      break;
    }
    case Domain::kEpsJet: {
      auto pair = solve_psi(*rm.map_j, opts.order);
      auto flow = flow_series(pair, t, opts.order);
      auto limit = limit_s_to_1(flow);
      doc["t"] = to_string(t);
      doc["flow_eps"] = series_to_json(flow, rm.s_descriptor);
      doc["limit_s_to_1"] = series_to_json(limit, "1 (s->1)");
      csv = series_to_csv(limit);
      break;
    }
  }
  emit(opts, doc, csv);
  return 0;
}

int run_velocity(const CommonOpts& opts, std::optional<Rational> mass, bool potential) {
  ResolvedMap rm = resolve_map(opts);
  Json doc;
  std::string csv;
  switch (rm.domain) {
    case Domain::kRational: {
      auto pair = solve_psi(*rm.map_q, opts.order);
      auto vel = velocity_series(pair, opts.order);
      if (potential) {
        auto V = potential_series(vel.series, mass);
        doc["series"] = series_to_json(V, rm.s_descriptor);
        doc["scale"] = "(ln(s))^2";
        csv = series_to_csv(V);
      } else {
        doc["series"] = series_to_json(vel.series, rm.s_descriptor);
        doc["scale"] = "ln(s)";
        csv = series_to_csv(vel.series);
      }
      break;
    }
    case Domain::kFloat: {
      auto pair = solve_psi(*rm.map_f, opts.order);
      auto vel = velocity_series(pair, opts.order);
      auto out = potential ? potential_series(vel.series, mass) : vel.series;
      doc["series"] = series_to_json(out, rm.s_descriptor);
      doc["scale"] = "1";
      csv = series_to_csv(out);
      break;
    }
    case Domain::kEpsJet: {
      auto pair = solve_psi(*rm.map_j, opts.order);
      auto vel = velocity_series(pair, opts.order);
      auto out = potential ? potential_series(vel.series, mass) : vel.series;
      auto limit = limit_s_to_1(out);
      doc["series"] = series_to_json(out, rm.s_descriptor);
      doc["limit_s_to_1"] = series_to_json(limit, "1 (s->1)");
      doc["scale"] = "1";
      csv = series_to_csv(limit);
      break;
    }
  }
  emit(opts, doc, csv);
  return 0;
}

int run_surface(const CommonOpts& opts, const GridRanges& ranges, bool force_series, bool serial) {
  CommonOpts grid_opts = opts;
  if (grid_opts.eps_window < 0) grid_opts.use_float = true;  // series surfaces sample irrational s^t
  ResolvedMap rm = resolve_map(grid_opts);

  FlowGrid grid{};
  if (rm.domain == Domain::kEpsJet) {
    auto pair = solve_psi(*rm.map_j, opts.order);
    GridProvenance prov{rm.descriptor, opts.order, domain_name(rm.domain), rm.s_descriptor, "", 0.0};
    grid = grid_from_flow_limit(pair, rm.x0, ranges, prov, !serial);
  } else if (rm.entry && rm.entry->trajectory && !force_series) {
    grid = grid_from_trajectory(*rm.entry, ranges, !serial);
    grid.prov.order = opts.order;
  } else {
    auto pair = solve_psi(*rm.map_f, opts.order);
    GridProvenance prov{rm.descriptor, opts.order, domain_name(rm.domain), rm.s_descriptor, "", 0.0};
    grid = grid_from_flow(pair, rm.x0, ranges, prov, !serial);
  }
  emit(opts, grid_to_json(grid), grid_to_csv(grid));
  return 0;
}

int run_koenigs(const CommonOpts& opts, double x, int iterations) {
  std::optional<Rational> s_opt;
  if (!opts.s_text.empty()) s_opt = rational_from_string(opts.s_text);
  if (opts.map_spec.rfind("poly:", 0) == 0)
    throw std::domain_error("koenigs needs a catalog map with a closed-form backward step");
  CatalogEntry entry = catalog_lookup(opts.map_spec, s_opt);
  if (!entry.backward) throw std::domain_error("catalog map '" + entry.id + "' has no backward step");
  auto estimates = koenigs_estimates(entry.backward, entry.s, entry.x0, x, iterations);

  Json doc;
  doc["map"] = entry.id;
  doc["s"] = format_double(entry.s);
  doc["x"] = format_double(x);
  doc["iterations"] = iterations;
  Json est = Json::array();
  for (double v : estimates) est.push_back(format_double(v));
  doc["estimates"] = std::move(est);
  doc["psi_estimate"] = format_double(estimates.back());

  std::ostringstream csv;
  csv << "iteration,estimate\n";
  for (size_t k = 0; k < estimates.size(); ++k) csv << (k + 1) << ',' << format_double(estimates[k]) << '\n';
  emit(opts, doc, csv.str());
  return 0;
}

int run_pn(const CommonOpts& opts, int n, const std::string& at_s) {
  PnPolynomial p = ricker_pn(n);
  Json doc;
  doc["n"] = n;
  doc["degree"] = p.degree();
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs) coeffs.push_back(to_string(c));
  doc["coefficients"] = std::move(coeffs);
  doc["at_s_equal_1"] = to_string(p(Rational(1)));
  PnStructuralReport report = pn_structural_report(n);
  Json st;
  st["matched"] = report.matched;
  st["ambiguous"] = report.ambiguous;
  st["mismatched"] = report.mismatched;
  doc["structural_terms"] = std::move(st);
  if (!at_s.empty()) {
    Rational s = rational_from_string(at_s);
    doc["value_at_s"] = to_string(p(s));
    doc["psi_coefficient_at_s"] = to_string(ricker_psi_coeff(n, s));
    auto entry = catalog_lookup("ricker", s);
    auto pair = solve_psi(make_map(entry.series_q(n)), n);
    doc["qn_at_s"] = to_string(ricker_qn_value(n, s, pair.phi));
  }

  std::ostringstream csv;
  csv << "k,coefficient\n";
  for (size_t k = 0; k < p.coeffs.size(); ++k) csv << k << ',' << to_string(p.coeffs[k]) << '\n';
  emit(opts, doc, csv.str());
  return 0;
}

int run_check(const CommonOpts& opts) {
  ResolvedMap rm = resolve_map(opts);
  ConjugacyReport report;
  bool pass = false;
  switch (rm.domain) {
    case Domain::kRational: {
      auto pair = solve_psi(*rm.map_q, opts.order);
      report = check_conjugacy(pair, *rm.map_q);
      pass = report.all_zero_in_exact_mode;
      break;
    }
    case Domain::kFloat: {
      auto pair = solve_psi(*rm.map_f, opts.order);
      report = check_conjugacy(pair, *rm.map_f);
      pass = report.max_relative <= 1e-10;
      break;
    }
    case Domain::kEpsJet: {
      auto pair = solve_psi(*rm.map_j, opts.order);
      report = check_conjugacy(pair, *rm.map_j);
      // Pole cancellation at fractional times; a surviving principal
      // part throws out to exit code 2.
      for (const Rational& t : {Rational(1, 2), Rational(1, 3)}) {
        flow_limit_s_to_1(pair, t, opts.order);
        CheckResult c;
        c.name = "eps_pole_cancellation(t=" + to_string(t) + ")";
        c.exact_zero = true;
        report.checks.push_back(c);
      }
      limit_s_to_1(velocity_series(pair, opts.order).series);
      pass = report.all_zero_in_exact_mode;
      break;
    }
  }
  Json doc = report_to_json(report, rm.descriptor, opts.order, domain_name(rm.domain), pass);
  emit(opts, doc, report_to_csv(report));
  return pass ? 0 : 2;
}

int run_catalog(const CommonOpts& opts) {
  Json list = Json::array();
  for (const auto& id : catalog_ids()) {
    CatalogEntry e = catalog_lookup(id);
    Json j;
    j["id"] = e.id;
    j["s"] = e.s_rational ? to_string(e.s_q) : format_double(e.s);
    j["s_is_parameter"] = e.s_parameter;
    j["x0"] = format_double(e.x0);
    j["tau_scale"] = format_double(e.tau_scale);
    j["closed_psi"] = static_cast<bool>(e.psi);
    j["closed_trajectory"] = static_cast<bool>(e.trajectory);
    j["backward_step"] = static_cast<bool>(e.backward);
    list.push_back(std::move(j));
  }
  Json doc;
  doc["maps"] = std::move(list);

  std::ostringstream csv;
  csv << "id,s,x0,tau_scale\n";
  for (const auto& id : catalog_ids()) {
    CatalogEntry e = catalog_lookup(id);
    csv << e.id << ',' << (e.s_rational ? to_string(e.s_q) : format_double(e.s)) << ',' << format_double(e.x0) << ','
        << format_double(e.tau_scale) << '\n';
  }
  emit(opts, doc, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuous-time iterates of one-dimensional maps via Schroeder's functional equation"};
  app.require_subcommand(1);

  CommonOpts opts;
  opts.order = default_order();

  std::string t_text;
  bool mass_given = false;
  std::string mass_text;
  GridRanges ranges;
  ranges.x_min = -0.5;
  ranges.x_max = 0.5;
  ranges.nx = 41;
  ranges.nt = 21;
  std::string t_min_text = "0", t_max_text = "1";
  bool force_series = false, serial = false;
  double koenigs_x = 0.2;
  int koenigs_iters = 30;
  int pn_n = 4;
  std::string pn_s;

  auto* solve = app.add_subcommand("solve", "solve Schroeder's equation for psi and its inverse");
  add_common(solve, opts);

  auto* iterate = app.add_subcommand("iterate", "series of the continuous iterate f_t");
  add_common(iterate, opts);
  iterate->add_option("--t", t_text, "iterate index t (rational, e.g. 1/2 or -1)")->required();

  auto* velocity = app.add_subcommand("velocity", "initial velocity profile v = ln(s) psi/psi'");
  add_common(velocity, opts);

  auto* potential = app.add_subcommand("potential", "effective potential V = -v^2 (or -(m/2) v^2)");
  add_common(potential, opts);
  potential->add_option("--mass", mass_text, "mass prefactor m (rational) for V = -(m/2) v^2");

  auto* surface = app.add_subcommand("surface", "evolution surface f_t(x) over an (x, t) grid");
  add_common(surface, opts);
  surface->add_option("--x-min", ranges.x_min);
  surface->add_option("--x-max", ranges.x_max);
  surface->add_option("--nx", ranges.nx)->check(CLI::Range(1, 100000));
  surface->add_option("--t-min", t_min_text);
  surface->add_option("--t-max", t_max_text);
  surface->add_option("--nt", ranges.nt)->check(CLI::Range(1, 100000));
  surface->add_flag("--series", force_series, "use the series route even when a closed form exists");
  surface->add_flag("--serial", serial, "disable the parallel grid fill");

  auto* koenigs = app.add_subcommand("koenigs", "Koenigs estimates s^N f_{-N}(x) of psi(x)");
  add_common(koenigs, opts);
  koenigs->add_option("--x", koenigs_x, "evaluation point");
  koenigs->add_option("--iters", koenigs_iters, "number of backward iterations")->check(CLI::Range(1, 200));

  auto* pn = app.add_subcommand("pn", "p_n polynomial of the ricker psi coefficients");
  add_common(pn, opts, false);
  pn->add_option("--n", pn_n, "index n")->check(CLI::Range(1, 64));
  pn->add_option("--at-s", pn_s, "also evaluate p_n, the psi coefficient and q_n at this rational s");

  auto* check = app.add_subcommand("check", "run the invariant suite for a map");
  add_common(check, opts);

  auto* catalog = app.add_subcommand("catalog", "list built-in maps");
  add_common(catalog, opts, false);

  CLI11_PARSE(app, argc, argv);

  try {
    mass_given = potential->parsed() && !mass_text.empty();
    if (surface->parsed()) {
      ranges.t_min = rational_from_string(t_min_text);
      ranges.t_max = rational_from_string(t_max_text);
    }

    if (solve->parsed()) return run_solve(opts);
    if (iterate->parsed()) return run_iterate(opts, t_text);
    if (velocity->parsed()) return run_velocity(opts, std::nullopt, false);
    if (potential->parsed())
      return run_velocity(opts, mass_given ? std::optional<Rational>(rational_from_string(mass_text)) : std::nullopt,
                          true);
    if (surface->parsed()) return run_surface(opts, ranges, force_series, serial);
    if (koenigs->parsed()) return run_koenigs(opts, koenigs_x, koenigs_iters);
    if (pn->parsed()) return run_pn(opts, pn_n, pn_s);
    if (check->parsed()) return run_check(opts);
    if (catalog->parsed()) return run_catalog(opts);
  } catch (const InternalConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
