#include "dbar/monomial.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dbar/delta.hpp"

namespace dbar {

namespace {

constexpr double kExtractFloor = 1e-14;

// ln(|a| r^n k^k/n^n); −inf for a = 0.
double log_weighted(const MultiIndex& k, std::complex<double> a, double r) {
  const double m = std::abs(a);
  if (m == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(m) + k.order() * std::log(r) - k.log_coeff();
}

}  // namespace

int MonomialSeries::max_grade() const {
  int g = -1;
  for (const auto& [k, a] : coeffs) g = std::max(g, k.order());
  return g;
}

SeriesValue eval(const MonomialSeries& h, const Point& z) {
  if (!(z.l1_norm() < h.radius)) throw std::domain_error("monomial eval: requires ||z|| < radius");
  SeriesValue out;
  for (const auto& [k, a] : h.coeffs) {
    std::complex<double> term = a;
    for (const auto& e : k.entries()) term *= std::pow(z[e.coord], e.exp);
    out.value += term;
  }
  if (h.provenance == Provenance::explicit_series) return out;
  if (!h.tail_bound) {
    out.tail = std::numeric_limits<double>::infinity();
    return out;
  }
  const auto enc = delta_enclose(1.0, z.scaled(1.0 / h.radius), h.stored_grade);
  out.tail = *h.tail_bound * std::max(0.0, enc.best_upper() - enc.lower);
  return out;
}

double bracket_norm(const MonomialSeries& h, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("bracket_norm: requires r > 0");
  double best = 0.0;
  for (const auto& [k, a] : h.coeffs) best = std::max(best, std::exp(log_weighted(k, a, r)));
  return best;
}

double coeff_bound(const MonomialSeries& h, double R) { return bracket_norm(h, R); }

std::vector<double> extraction_radii(int dim, double R) {
  std::vector<double> rho(static_cast<std::size_t>(dim));
  for (int nu = 1; nu <= dim; ++nu) rho[nu - 1] = R / 2.0 * std::ldexp(1.0, -nu);
  return rho;
}

MonomialSeries extract(const HoloFunction& hfun, int dim, double R, int max_grade, int grid) {
  if (dim < 1) throw std::invalid_argument("extract: dimension must be positive");
  if (!(R > 0.0)) throw std::invalid_argument("extract: radius must be positive");
  if (max_grade < 0) throw std::invalid_argument("extract: negative max grade");
  if (grid == 0) grid = 2 * max_grade + 1;
  if (grid <= max_grade) throw std::invalid_argument("extract: grid too small for max grade (aliasing)");

  const auto rho = extraction_radii(dim, R);
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(grid));
  for (int t = 0; t < grid; ++t) roots[t] = std::polar(1.0, 2.0 * std::numbers::pi * t / grid);

  std::size_t total = 1;
  for (int nu = 0; nu < dim; ++nu) total *= static_cast<std::size_t>(grid);
  std::vector<std::complex<double>> values(total);
  std::vector<int> t(static_cast<std::size_t>(dim), 0);
  std::vector<std::complex<double>> z(static_cast<std::size_t>(dim));
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (int nu = 0; nu < dim; ++nu) z[nu] = rho[nu] * roots[t[nu]];
    values[flat] = hfun(z);
    for (int nu = 0; nu < dim; ++nu) {
      if (++t[nu] < grid) break;
      t[nu] = 0;
    }
  }

  MonomialSeries out;
  out.radius = R;
  out.provenance = Provenance::extracted;
  out.stored_grade = max_grade;
  for (const auto& k : indices_up_to(dim, max_grade)) {
    std::vector<int> kk(static_cast<std::size_t>(dim), 0);
    double scale = 1.0;
    for (const auto& e : k.entries()) {
      kk[e.coord - 1] = e.exp;
      scale *= std::pow(rho[e.coord - 1], e.exp);
    }
    std::fill(t.begin(), t.end(), 0);
    std::complex<double> acc = 0.0;
    for (std::size_t flat = 0; flat < total; ++flat) {
      int phase = 0;
      for (int nu = 0; nu < dim; ++nu) phase = (phase + kk[nu] * t[nu]) % grid;
      acc += values[flat] * std::conj(roots[phase]);
      for (int nu = 0; nu < dim; ++nu) {
        if (++t[nu] < grid) break;
        t[nu] = 0;
      }
    }
    const std::complex<double> a = acc / (static_cast<double>(total) * scale);
    if (std::abs(a) >= kExtractFloor) out.coeffs.emplace(k, a);
  }
  return out;
}

EntireSplit entire_split(const MonomialSeries& h, double r, double epsilon) {
  if (!(r > 0.0 && r < h.radius)) throw std::invalid_argument("entire_split: requires 0 < r < radius");
  if (!(epsilon > 0.0)) throw std::invalid_argument("entire_split: requires epsilon > 0");
  EntireSplit out;
  out.psi.radius = h.radius;
  out.psi.provenance = Provenance::explicit_series;
  // Same weighted value as bracket_norm, so [h − ψ]_r < ε holds bit for bit.
  for (const auto& [k, a] : h.coeffs) {
    const double w = std::exp(log_weighted(k, a, r));
    if (w >= epsilon) {
      out.psi.coeffs.emplace(k, a);
      out.kept.insert(k);
    } else {
      out.remainder_norm = std::max(out.remainder_norm, w);
    }
  }
  out.psi.stored_grade = std::max(0, out.psi.max_grade());
  return out;
}

MonomialSeries operator-(const MonomialSeries& a, const MonomialSeries& b) {
  MonomialSeries out = a;
  for (const auto& [k, c] : b.coeffs) {
    auto [it, fresh] = out.coeffs.emplace(k, -c);
    if (!fresh) {
      it->second -= c;
      if (it->second == std::complex<double>{}) out.coeffs.erase(it);
    }
  }
  return out;
}

}  // namespace dbar
