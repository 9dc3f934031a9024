#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "schroflow/engine.hpp"
#include "schroflow/grid.hpp"

namespace schroflow {

using Json = nlohmann::ordered_json;

// Fixed "%.17g" rendering; all floats cross the serialization boundary
// as strings so output bytes are stable.
std::string format_double(double v);

Json series_to_json(const TruncatedSeries<Rational>& a, const std::string& s_descriptor);
Json series_to_json(const TruncatedSeries<double>& a, const std::string& s_descriptor);
Json series_to_json(const TruncatedSeries<EpsJet>& a, const std::string& s_descriptor);

TruncatedSeries<Rational> rational_series_from_json(const Json& j);

std::string grid_to_csv(const FlowGrid& grid);
Json grid_to_json(const FlowGrid& grid);

// "k,coefficient" rows; eps-jet coefficients pack as power:value pairs
// separated by semicolons.
template <class D>
std::string series_to_csv(const TruncatedSeries<D>& a);

std::string report_to_csv(const ConjugacyReport& report);

Json report_to_json(const ConjugacyReport& report, const std::string& map_descriptor, int order,
                    const std::string& domain, bool pass);

// Stable dump: two-space indent, LF line endings, trailing newline.
std::string dump_json(const Json& j);

// dest "-" writes to stdout; anything else is a file path.
size_t write_output(std::string_view payload, const std::string& dest);

}  // namespace schroflow
