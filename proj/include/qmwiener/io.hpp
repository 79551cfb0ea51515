#pragma once

#include <string>

#include <json.hpp>

#include "qmwiener/capacity.hpp"
#include "qmwiener/exponents.hpp"
#include "qmwiener/sharpness.hpp"
#include "qmwiener/wiener.hpp"

namespace qmw::io {

using json = nlohmann::ordered_json;

// Parses a decimal literal or an exact rational "num/den" (e.g. "4/3"),
// avoiding representation loss on the way in.
double parse_real(const std::string& text);

// Writes text with LF endings; throws io_error on failure.
void write_text_file(const std::string& path, const std::string& content);

std::string dump(const json& doc);  // pretty, trailing newline, stable key order

// Document builders; every document carries a versioned "schema" tag and
// validates against the matching file under schemas/.
json exponents_report(double Q, double p, double eps);
json capacity_report(const Condenser& c, int oracle_grid_points);  // 0 = skip oracle
json wiener_report_json(const WienerReport& report);
json sharpness_report(const SharpnessRun& run);

}  // namespace qmw::io
