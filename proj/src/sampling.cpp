#include "dbar/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dbar {

using cplx = std::complex<double>;

Sample sample_l1_ball(int dim, double radius, std::mt19937_64& rng) {
  if (dim < 1) throw std::invalid_argument("sampling: dimension must be positive");
  std::gamma_distribution<double> g2(2.0, 1.0);
  std::exponential_distribution<double> g1(1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<double> w(static_cast<std::size_t>(dim));
  double total = g1(rng);
  for (auto& x : w) total += (x = g2(rng));
  Sample z(static_cast<std::size_t>(dim));
  for (int nu = 0; nu < dim; ++nu) z[nu] = std::polar(radius * w[nu] / total, phase(rng));
  return z;
}

std::vector<Sample> sample_l1_ball(int dim, double radius, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Sample> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) out.push_back(sample_l1_ball(dim, radius, rng));
  return out;
}

Sample sample_l1_sphere(int dim, double radius, std::mt19937_64& rng) {
  std::gamma_distribution<double> g2(2.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<double> w(static_cast<std::size_t>(dim));
  double total = 0.0;
  for (auto& x : w) total += (x = g2(rng));
  Sample z(static_cast<std::size_t>(dim));
  for (int nu = 0; nu < dim; ++nu) z[nu] = std::polar(radius * w[nu] / total, phase(rng));
  return z;
}

double l1_norm(std::span<const cplx> z) {
  double s = 0.0;
  for (auto v : z) s += std::abs(v);
  return s;
}

double l1_distance(std::span<const cplx> a, std::span<const cplx> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

namespace {

double dual_norm(const std::vector<cplx>& v) {
  double m = 0.0;
  for (auto x : v) m = std::max(m, std::abs(x));
  return m;
}

double dual_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

Seminorms seminorm_estimate(const Field& field, int dim, double radius, int samples, std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("seminorm_estimate: need at least 2 samples");
  if (!(radius > 0.0)) throw std::invalid_argument("seminorm_estimate: radius must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Seminorms s;
  s.ball_radius = radius;
  s.sample_count = samples;
  std::vector<Sample> pts;
  std::vector<std::vector<cplx>> vals;
  pts.reserve(samples);
  vals.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    pts.push_back(sample_l1_ball(dim, radius, rng));
    vals.push_back(field(pts.back()));
    s.sup0 = std::max(s.sup0, dual_norm(vals.back()));
  }
  // Far pairs: consecutive samples. Near pairs: a small random step that
  // stays inside the ball, to probe the local gradient.
  const double step = 1e-4 * radius;
  for (int i = 0; i < samples; ++i) {
    const auto& z = pts[i];
    if (i + 1 < samples) {
      const double d = l1_distance(z, pts[i + 1]);
      if (d > 0.0) s.lip1 = std::max(s.lip1, dual_distance(vals[i], vals[i + 1]) / d);
    }
    Sample w = z;
    for (auto& x : w) x += cplx(gauss(rng), gauss(rng)) * step;
    const double nw = l1_norm(w);
    if (nw >= radius) {
      for (auto& x : w) x *= (radius * (1.0 - 1e-12)) / nw;
    }
    const double d = l1_distance(z, w);
    if (d > 0.0) s.lip1 = std::max(s.lip1, dual_distance(vals[i], field(w)) / d);
  }
  return s;
}

Seminorms seminorm_estimate(const PolyFunction& u, double radius, int samples, std::uint64_t seed) {
  const int dim = std::max(u.dim(), 1);
  return seminorm_estimate([&u](std::span<const cplx> z) { return std::vector<cplx>{u.eval(z)}; }, dim, radius,
                           samples, seed);
}

Seminorms seminorm_estimate(const PolyForm& f, double radius, int samples, std::uint64_t seed) {
  const int dim = std::max(f.dim(), 1);
  return seminorm_estimate([&f](std::span<const cplx> z) { return f.eval(z); }, dim, radius, samples, seed);
}

VolumeEstimate l1_volume_ratio(int dim, int samples, std::uint64_t seed) {
  if (dim < 1 || samples < 2) throw std::invalid_argument("l1_volume_ratio: bad arguments");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int n = 2 * dim;
  int hits = 0;
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < samples; ++i) {
    // Uniform in the Euclidean unit ball of R^{2N}.
    double r2 = 0.0;
    for (auto& v : x) {
      v = gauss(rng);
      r2 += v * v;
    }
    const double scale = std::pow(unif(rng), 1.0 / n) / std::sqrt(r2);
    double l1 = 0.0;
    for (int nu = 0; nu < dim; ++nu) l1 += std::hypot(x[2 * nu], x[2 * nu + 1]) * scale;
    if (l1 < 1.0) ++hits;
  }
  VolumeEstimate e;
  e.samples = samples;
  e.ratio = static_cast<double>(hits) / samples;
  e.std_error = std::sqrt(e.ratio * (1.0 - e.ratio) / samples);
  return e;
}

double l1_ball_sup_bound(double R, int dim, double z_norm, double f_sup) {
  if (!(z_norm < R)) throw std::domain_error("l1_ball_sup_bound: point outside the ball");
  return 2.0 * (R + std::sqrt(static_cast<double>(dim)) * 2.0 * R) * std::pow(R / (R - z_norm), dim) * f_sup;
}

}  // namespace dbar
