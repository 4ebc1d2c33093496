#include "dbar/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dbar {

namespace {

mpq_class rational_from_json(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return mpq_class(v.get<long>());
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw std::invalid_argument("json: coefficient is not finite");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, d);
    return parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
  }
  if (v.is_null()) return 0;
  throw std::invalid_argument("json: coefficient must be a number or a rational string");
}

QComplex coeff_from_json(const json& t) {
  return {t.contains("re") ? rational_from_json(t.at("re")) : mpq_class(0),
          t.contains("im") ? rational_from_json(t.at("im")) : mpq_class(0)};
}

MultiIndex index_from_json(const json& t, const char* key) {
  if (!t.contains(key)) return {};
  const auto& v = t.at(key);
  if (v.is_null()) return {};
  return MultiIndex::parse(v.get<std::string>());
}

}  // namespace

json function_to_json(const PolyFunction& u) {
  json terms = json::array();
  for (const auto& [bi, c] : u.terms()) {
    terms.push_back({{"alpha", bi.alpha.to_string()},
                     {"beta", bi.beta.to_string()},
                     {"re", c.re.get_str()},
                     {"im", c.im.get_str()}});
  }
  return terms;
}

PolyFunction function_from_json(const json& j, int dim) {
  if (!j.is_array()) throw std::invalid_argument("json: terms must be an array");
  PolyFunction u(dim);
  for (const auto& t : j) {
    const MultiIndex alpha = index_from_json(t, "alpha");
    const MultiIndex beta = index_from_json(t, "beta");
    if (!alpha.supported_in(dim) || !beta.supported_in(dim)) {
      throw std::invalid_argument("json: term uses a coordinate above dim");
    }
    u.add(alpha, beta, coeff_from_json(t));
  }
  return u;
}

json form_to_json(const PolyForm& f) {
  json comps = json::array();
  for (int nu = 1; nu <= f.dim(); ++nu) {
    if (f.comp(nu).is_zero()) continue;
    comps.push_back({{"nu", nu}, {"terms", function_to_json(f.comp(nu))}});
  }
  return {{"dim", f.dim()}, {"comps", comps}};
}

PolyForm form_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim")) throw std::invalid_argument("json: form needs a dim field");
  const int dim = j.at("dim").get<int>();
  if (dim < 1) throw std::invalid_argument("json: form dim must be positive");
  PolyForm f(dim);
  if (!j.contains("comps")) return f;
  for (const auto& c : j.at("comps")) {
    const int nu = c.at("nu").get<int>();
    if (nu < 1 || nu > dim) throw std::invalid_argument("json: component index outside 1..dim");
    f.comp(nu) += function_from_json(c.value("terms", json::array()), dim);
  }
  return f;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

PolyForm load_form(const std::string& path) { return form_from_json(read_json_file(path)); }

std::vector<PolyForm> load_forms(const std::string& path) {
  const json j = read_json_file(path);
  const json& list = j.is_array() ? j : j.at("forms");
  std::vector<PolyForm> out;
  for (const auto& f : list) out.push_back(form_from_json(f));
  return out;
}

json series_to_json(const MonomialSeries& h) {
  json terms = json::array();
  for (const auto& [k, a] : h.coeffs) terms.push_back({{"k", k.to_string()}, {"re", a.real()}, {"im", a.imag()}});
  return {{"radius", h.radius}, {"terms", terms}};
}

MonomialSeries series_from_json(const json& j, double default_radius) {
  MonomialSeries h;
  h.radius = default_radius;
  const json* terms = &j;
  if (j.is_object()) {
    if (j.contains("radius")) h.radius = j.at("radius").get<double>();
    terms = &j.at("terms");
  }
  if (!terms->is_array()) throw std::invalid_argument("json: series terms must be an array");
  if (!(h.radius > 0.0)) throw std::invalid_argument("json: series radius must be positive");
  for (const auto& t : *terms) {
    const MultiIndex k = index_from_json(t, "k");
    const QComplex c = coeff_from_json(t);
    const std::complex<double> a = c.to_cplx();
    if (a == std::complex<double>{}) continue;
    auto [it, fresh] = h.coeffs.emplace(k, a);
    if (!fresh) it->second += a;
  }
  h.stored_grade = std::max(0, h.max_grade());
  return h;
}

MonomialSeries load_series(const std::string& path, double default_radius) {
  return series_from_json(read_json_file(path), default_radius);
}

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace dbar
