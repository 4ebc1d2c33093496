#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dbar/monomial.hpp"
#include "dbar/poly.hpp"

namespace dbar {

using json = nlohmann::json;

/// {dim, comps: [{nu, terms: [{alpha, beta, re, im}]}]}. Coefficients are
/// written as exact rational strings ("3/4"); on input re/im may also be
/// JSON numbers, read through their shortest decimal form (0.1 is 1/10).
json form_to_json(const PolyForm& f);
PolyForm form_from_json(const json& j);
PolyForm load_form(const std::string& path);

/// A list of forms, either a bare array or {"forms": [...]}.
std::vector<PolyForm> load_forms(const std::string& path);

json function_to_json(const PolyFunction& u);
PolyFunction function_from_json(const json& j, int dim);

/// Either a bare list [{k, re, im}] (radius taken from the argument) or
/// {radius, terms: [...]}.
json series_to_json(const MonomialSeries& h);
MonomialSeries series_from_json(const json& j, double default_radius = 1.0);
MonomialSeries load_series(const std::string& path, double default_radius = 1.0);

json read_json_file(const std::string& path);

/// 17 significant digits, '.' decimal point.
std::string csv_number(double x);
void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace dbar
