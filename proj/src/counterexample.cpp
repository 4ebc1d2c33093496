#include "dbar/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dbar {

using cplx = std::complex<double>;

namespace {

void check_args(cplx zeta, int p) {
  if (p < 1) throw std::invalid_argument("counterexample: p must be >= 1");
  if (!(std::abs(zeta) < kCxRadius)) throw std::domain_error("counterexample: requires |zeta| < 0.6");
}

cplx ipow(cplx z, int p) {
  cplx out = 1.0;
  for (int i = 0; i < p; ++i) out *= z;
  return out;
}

}  // namespace

cplx lambda_fn(cplx zeta, int p) {
  check_args(zeta, p);
  if (zeta == cplx{}) return 0.0;
  return ipow(zeta, p) * std::log(-std::log(std::norm(zeta)));
}

cplx phi_fn(cplx zeta, int p) {
  check_args(zeta, p);
  if (zeta == cplx{}) return 0.0;
  return ipow(zeta, p) / (std::conj(zeta) * std::log(std::norm(zeta)));
}

cplx form_eval(const Point& z, const Point& xi, int p) {
  cplx acc = 0.0;
  for (const auto& e : xi.entries()) acc += phi_fn(z[e.coord], p) * std::conj(e.value);
  return acc;
}

double holder_bound(const Point& z, const Point& xi, int p) {
  if (p < 1) throw std::invalid_argument("counterexample: p must be >= 1");
  double zp = 0.0;
  double xp = 0.0;
  for (const auto& e : z.entries()) zp += std::pow(std::abs(e.value), p);
  for (const auto& e : xi.entries()) xp += std::pow(std::abs(e.value), p);
  const double znorm = std::pow(zp, 1.0 / p);
  return (p == 1 ? 1.0 : std::pow(znorm, p - 1)) * std::pow(xp, 1.0 / p);
}

std::vector<CxRow> divergence_scan(const CxConfig& cfg) {
  if (cfg.p < 1) throw std::invalid_argument("divergence_scan: p must be >= 1");
  if (!(cfg.R > 0.0 && 2.0 * cfg.R < kCxRadius)) throw std::invalid_argument("divergence_scan: requires 0 < 2R < 0.6");
  for (std::size_t i = 0; i < cfg.N_list.size(); ++i) {
    if (cfg.N_list[i] < 1) throw std::invalid_argument("divergence_scan: N must be positive");
    if (i && cfg.N_list[i] <= cfg.N_list[i - 1]) throw std::invalid_argument("divergence_scan: N list must be ascending");
  }
  const double rp = std::pow(cfg.R, cfg.p);
  const double base = -2.0 * std::log(cfg.R);
  std::vector<CxRow> rows;
  double lo = HUGE_VAL;
  double hi = -HUGE_VAL;
  int n = 0;
  for (int N : cfg.N_list) {
    while (n < N) {
      ++n;
      const double L = std::log(base + 2.0 / cfg.p * std::log(static_cast<double>(n)));
      lo = std::min(lo, L);
      hi = std::max(hi, L);
    }
    rows.push_back({N, (hi + lo) / 2.0, rp * (hi - lo) / 2.0});
  }
  return rows;
}

std::vector<int> doubling_list(int n_max) {
  if (n_max < 1) throw std::invalid_argument("doubling_list: n_max must be positive");
  std::vector<int> out;
  for (long n = 1; n <= n_max; n *= 2) out.push_back(static_cast<int>(n));
  if (out.back() != n_max) out.push_back(n_max);
  return out;
}

cplx homogeneous_part(cplx zeta, int p, int grid) {
  if (grid < 1) throw std::invalid_argument("homogeneous_part: grid must be positive");
  cplx acc = 0.0;
  for (int t = 0; t < grid; ++t) {
    const cplx rot = std::polar(1.0, 2.0 * std::numbers::pi * t / grid);
    acc += std::conj(ipow(rot, p)) * lambda_fn(rot * zeta, p);
  }
  return acc / static_cast<double>(grid);
}

cplx dbar_lambda_fd(cplx zeta, int p, double h) {
  const cplx I(0.0, 1.0);
  const cplx dx = (lambda_fn(zeta + h, p) - lambda_fn(zeta - h, p)) / (2.0 * h);
  const cplx dy = (lambda_fn(zeta + I * h, p) - lambda_fn(zeta - I * h, p)) / (2.0 * h);
  return 0.5 * (dx + I * dy);
}

std::vector<double> radial_derivative_probe(int p, int order, const std::vector<double>& radii) {
  if (order < 0 || order > 4) throw std::invalid_argument("derivative probe: order must lie in 0..4");
  std::vector<double> out;
  for (double x : radii) {
    if (!(x > 0.0)) throw std::invalid_argument("derivative probe: radii must be positive");
    const double h = x / 8.0;
    double acc = 0.0;
    double binom = 1.0;
    // Centered binomial stencil: Σ (−1)^i C(m, i) λ(x + (m/2 − i)h).
    for (int i = 0; i <= order; ++i) {
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      acc += sign * binom * lambda_fn(x + (order / 2.0 - i) * h, p).real();
      binom = binom * (order - i) / (i + 1);
    }
    out.push_back(std::abs(acc) / std::pow(h, order));
  }
  return out;
}

}  // namespace dbar
