#include "schroflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace schroflow {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

Json series_header(int order, const char* domain, const std::string& s_descriptor) {
  Json j;
  j["variable"] = "x";
  j["order"] = order;
  j["domain"] = domain;
  j["s"] = s_descriptor;
  return j;
}

}  // namespace

Json series_to_json(const TruncatedSeries<Rational>& a, const std::string& s_descriptor) {
  Json j = series_header(a.order(), "rational", s_descriptor);
  Json coeffs = Json::array();
  for (int k = 0; k <= a.order(); ++k) coeffs.push_back(to_string(a[k]));
  j["coefficients"] = std::move(coeffs);
  return j;
}

Json series_to_json(const TruncatedSeries<double>& a, const std::string& s_descriptor) {
  Json j = series_header(a.order(), "float", s_descriptor);
  Json coeffs = Json::array();
  for (int k = 0; k <= a.order(); ++k) coeffs.push_back(format_double(a[k]));
  j["coefficients"] = std::move(coeffs);
  return j;
}

Json series_to_json(const TruncatedSeries<EpsJet>& a, const std::string& s_descriptor) {
  Json j = series_header(a.order(), "epsjet", s_descriptor);
  Json coeffs = Json::array();
  for (int k = 0; k <= a.order(); ++k) {
    Json pairs = Json::array();
    const EpsJet& jet = a[k];
    if (!jet.is_zero()) {
      for (int p = jet.lowest_power(); p <= jet.highest_stored_power(); ++p)
        pairs.push_back(Json::array({p, to_string(jet.coeff(p))}));
    }
    coeffs.push_back(std::move(pairs));
  }
  j["coefficients"] = std::move(coeffs);
  return j;
}

TruncatedSeries<Rational> rational_series_from_json(const Json& j) {
  if (j.at("domain").get<std::string>() != "rational")
    throw std::invalid_argument("series document is not in the rational domain");
  int order = j.at("order").get<int>();
  const Json& coeffs = j.at("coefficients");
  if (static_cast<int>(coeffs.size()) != order + 1) throw std::invalid_argument("coefficient count mismatch");
  TruncatedSeries<Rational> out(order);
  for (int k = 0; k <= order; ++k) out[k] = rational_from_string(coeffs[static_cast<size_t>(k)].get<std::string>());
  return out;
}

std::string grid_to_csv(const FlowGrid& grid) {
  std::ostringstream os;
  os << "x,t,value\n";
  for (int it = 0; it < grid.nt; ++it) {
    std::string t = format_double(grid.t_at(it));
    for (int ix = 0; ix < grid.nx; ++ix)
      os << format_double(grid.x_at(ix)) << ',' << t << ',' << format_double(grid.at(it, ix)) << '\n';
  }
  return os.str();
}

Json grid_to_json(const FlowGrid& grid) {
  Json j;
  j["map"] = grid.prov.map;
  j["order"] = grid.prov.order;
  j["domain"] = grid.prov.domain;
  j["s"] = grid.prov.s;
  j["method"] = grid.prov.method;
  j["max_tail_estimate"] = format_double(grid.prov.max_tail_estimate);
  j["x_min"] = format_double(grid.x_min);
  j["x_max"] = format_double(grid.x_max);
  j["nx"] = grid.nx;
  j["t_min"] = to_string(grid.t_min);
  j["t_max"] = to_string(grid.t_max);
  j["nt"] = grid.nt;
  Json rows = Json::array();
  for (int it = 0; it < grid.nt; ++it) {
    Json row = Json::array();
    for (int ix = 0; ix < grid.nx; ++ix) row.push_back(format_double(grid.at(it, ix)));
    rows.push_back(std::move(row));
  }
  j["values"] = std::move(rows);
  return j;
}

namespace {

std::string coefficient_cell(const Rational& c) { return to_string(c); }
std::string coefficient_cell(double c) { return format_double(c); }
std::string coefficient_cell(const EpsJet& c) {
  if (c.is_zero()) return "0";
  std::string cell;
  for (int p = c.lowest_power(); p <= c.highest_stored_power(); ++p) {
    if (!cell.empty()) cell += ';';
    cell += std::to_string(p) + ":" + to_string(c.coeff(p));
  }
  return cell;
}

}  // namespace

template <class D>
std::string series_to_csv(const TruncatedSeries<D>& a) {
  std::ostringstream os;
  os << "k,coefficient\n";
  for (int k = 0; k <= a.order(); ++k) os << k << ',' << coefficient_cell(a[k]) << '\n';
  return os.str();
}

template std::string series_to_csv(const TruncatedSeries<Rational>&);
template std::string series_to_csv(const TruncatedSeries<double>&);
template std::string series_to_csv(const TruncatedSeries<EpsJet>&);

std::string report_to_csv(const ConjugacyReport& report) {
  std::ostringstream os;
  os << "check,max_residual,relative,exact_zero\n";
  for (const auto& c : report.checks)
    os << c.name << ',' << format_double(c.max_residual) << ',' << format_double(c.relative()) << ','
       << (c.exact_zero ? "true" : "false") << '\n';
  return os.str();
}

Json report_to_json(const ConjugacyReport& report, const std::string& map_descriptor, int order,
                    const std::string& domain, bool pass) {
  Json j;
  j["map"] = map_descriptor;
  j["order"] = order;
  j["domain"] = domain;
  Json checks;
  for (const auto& c : report.checks) {
    Json entry;
    entry["max_residual"] = format_double(c.max_residual);
    entry["relative"] = format_double(c.relative());
    entry["exact_zero"] = c.exact_zero;
    checks[c.name] = std::move(entry);
  }
  j["checks"] = std::move(checks);
  j["max_residual"] = format_double(report.max_residual);
  j["max_relative"] = format_double(report.max_relative);
  j["status"] = pass ? "pass" : "fail";
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

size_t write_output(std::string_view payload, const std::string& dest) {
  if (dest == "-" || dest == "stdout") {
    std::cout << payload;
    std::cout.flush();
    return payload.size();
  }
  std::ofstream out(dest, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + dest);
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw std::runtime_error("write failed: " + dest);
  return payload.size();
}

}  // namespace schroflow
