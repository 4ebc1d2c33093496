#include "dbar/torus_fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace dbar {

using cplx = std::complex<double>;

double fejer_coeff(int j, const SignedIndex& k) {
  if (j < 1) throw std::invalid_argument("fejer_coeff: requires j >= 1");
  double w = 1.0;
  for (const auto& e : k.entries()) {
    const int a = std::abs(e.value);
    if (a >= j) return 0.0;
    w *= 1.0 - static_cast<double>(a) / j;
  }
  return w;
}

std::vector<cplx> rotate(std::span<const cplx> z, std::span<const double> t) {
  std::vector<cplx> out(z.begin(), z.end());
  for (std::size_t nu = 0; nu < out.size() && nu < t.size(); ++nu) out[nu] *= std::polar(1.0, 2.0 * std::numbers::pi * t[nu]);
  return out;
}

cplx fourier_component(const TorusFunction& v, std::span<const cplx> z, const SignedIndex& k, int grid) {
  const int dim = static_cast<int>(z.size());
  if (k.max_coord() > dim) throw std::invalid_argument("fourier_component: index outside the dimension");
  if (grid <= 2 * k.max_abs()) throw std::invalid_argument("fourier_component: grid too small for the index (aliasing)");
  std::vector<cplx> roots(static_cast<std::size_t>(grid));
  for (int t = 0; t < grid; ++t) roots[t] = std::polar(1.0, 2.0 * std::numbers::pi * t / grid);
  std::vector<int> kk(static_cast<std::size_t>(dim), 0);
  for (const auto& e : k.entries()) kk[e.coord - 1] = ((e.value % grid) + grid) % grid;

  std::size_t total = 1;
  for (int nu = 0; nu < dim; ++nu) total *= static_cast<std::size_t>(grid);
  std::vector<int> t(static_cast<std::size_t>(dim), 0);
  std::vector<cplx> w(z.begin(), z.end());
  cplx acc = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    int phase = 0;
    for (int nu = 0; nu < dim; ++nu) {
      w[nu] = z[nu] * roots[t[nu]];
      phase = (phase + kk[nu] * t[nu]) % grid;
    }
    acc += v(w) * std::conj(roots[phase]);
    for (int nu = 0; nu < dim; ++nu) {
      if (++t[nu] < grid) break;
      t[nu] = 0;
    }
  }
  return acc / static_cast<double>(total);
}

FourierComponentSet FourierComponentSet::from_poly(const PolyFunction& u) {
  FourierComponentSet s;
  s.dim = u.dim();
  s.exhaustive = true;
  for (auto& [k, part] : u.bidegree_split()) {
    s.coverage = std::max(s.coverage, k.max_abs());
    s.components.emplace(k, [fp = FastPoly(part)](std::span<const cplx> z) { return fp(z); });
  }
  return s;
}

FourierComponentSet FourierComponentSet::from_samples(TorusFunction v, int dim, int coverage, int grid) {
  if (dim < 1) throw std::invalid_argument("fourier components: dimension must be positive");
  if (coverage < 0) throw std::invalid_argument("fourier components: negative coverage");
  if (grid <= 2 * coverage) throw std::invalid_argument("fourier components: grid too small for the coverage (aliasing)");
  FourierComponentSet s;
  s.dim = dim;
  s.coverage = coverage;
  const int side = 2 * coverage + 1;
  std::size_t total = 1;
  for (int nu = 0; nu < dim; ++nu) total *= static_cast<std::size_t>(side);
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::vector<std::pair<int, int>> pairs;
    for (int nu = 0; nu < dim; ++nu) {
      if (idx[nu] - coverage != 0) pairs.emplace_back(nu + 1, idx[nu] - coverage);
    }
    const SignedIndex k = SignedIndex::from_pairs(std::move(pairs));
    s.components.emplace(k, [v, k, grid](std::span<const cplx> z) { return fourier_component(v, z, k, grid); });
    for (int nu = 0; nu < dim; ++nu) {
      if (++idx[nu] < side) break;
      idx[nu] = 0;
    }
  }
  return s;
}

cplx cesaro_mean(const FourierComponentSet& set, int j, std::span<const cplx> z) {
  if (j < 1) throw std::invalid_argument("cesaro_mean: requires j >= 1");
  if (!set.exhaustive && j - 1 > set.coverage) throw std::invalid_argument("cesaro_mean: missing component for this j");
  cplx acc = 0.0;
  for (const auto& [k, vk] : set.components) {
    const double w = fejer_coeff(j, k);
    if (w != 0.0) acc += w * vk(z);
  }
  return acc;
}

double equivariance_defect(const FourierComponentSet& set, std::span<const cplx> z, int rotations,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  std::vector<double> t(z.size());
  for (int r = 0; r < rotations; ++r) {
    for (auto& x : t) x = unit(rng);
    const auto zt = rotate(z, t);
    for (const auto& [k, vk] : set.components) {
      double phase = 0.0;
      for (const auto& e : k.entries()) phase += e.value * t[e.coord - 1];
      const cplx expected = std::polar(1.0, 2.0 * std::numbers::pi * phase) * vk(z);
      worst = std::max(worst, std::abs(vk(zt) - expected));
    }
  }
  return worst;
}

namespace {

// Discrete Fejér kernel on g points, (1/g) Σ_{|h|<j} (1 − |h|/j) e^{2πihm/g},
// in its closed form (1/(gj)) sin²(πjm/g)/sin²(πm/g).
std::vector<double> fejer_kernel_1d(int g, int j) {
  std::vector<double> k(static_cast<std::size_t>(g));
  k[0] = static_cast<double>(j) / g;
  for (int m = 1; m < g; ++m) {
    const double num = std::sin(std::numbers::pi * j * m / g);
    const double den = std::sin(std::numbers::pi * m / g);
    k[m] = num * num / (den * den * j * g);
  }
  return k;
}

}  // namespace

FejerMean fejer_mean_t2(std::span<const double> values, int g, int j) {
  if (g < 1 || values.size() != static_cast<std::size_t>(g) * static_cast<std::size_t>(g)) {
    throw std::invalid_argument("fejer_mean_t2: value count must be g*g");
  }
  if (j < 1) throw std::invalid_argument("fejer_mean_t2: requires j >= 1");
  if (2 * j - 1 > g) throw std::invalid_argument("fejer_mean_t2: grid too small for j (aliasing)");
  const auto ker = fejer_kernel_1d(g, j);
  const auto [kmin, kmax] = std::minmax_element(ker.begin(), ker.end());
  FejerMean out;
  out.j = j;
  out.min_kernel_weight = std::min({*kmin * *kmin, *kmin * *kmax, *kmax * *kmax});

  // Separable circular convolution, axis 2 then axis 1.
  std::vector<double> tmp(values.size(), 0.0);
  for (int a = 0; a < g; ++a) {
    for (int b = 0; b < g; ++b) {
      double s = 0.0;
      for (int m = 0; m < g; ++m) s += ker[m] * values[a * g + (b - m + g) % g];
      tmp[a * g + b] = s;
    }
  }
  out.values.assign(values.size(), 0.0);
  for (int a = 0; a < g; ++a) {
    for (int b = 0; b < g; ++b) {
      double s = 0.0;
      for (int m = 0; m < g; ++m) s += ker[m] * tmp[((a - m + g) % g) * g + b];
      out.values[a * g + b] = s;
    }
  }
  return out;
}

namespace {

double grid_lipschitz(std::span<const double> v, int g) {
  double lip = 0.0;
  for (int a = 0; a < g; ++a) {
    for (int b = 0; b < g; ++b) {
      const double x = v[a * g + b];
      lip = std::max(lip, std::abs(v[((a + 1) % g) * g + b] - x) * g);
      lip = std::max(lip, std::abs(v[a * g + (b + 1) % g] - x) * g);
    }
  }
  return lip;
}

}  // namespace

FejerDemo fejer_demo(std::span<const int> js, int g) {
  FejerDemo demo;
  demo.grid = g;
  std::vector<double> v(static_cast<std::size_t>(g) * static_cast<std::size_t>(g));
  for (int a = 0; a < g; ++a) {
    for (int b = 0; b < g; ++b) {
      v[a * g + b] = std::abs(std::sin(std::numbers::pi * a / g)) + std::abs(std::sin(std::numbers::pi * b / g));
    }
  }
  for (double x : v) demo.sup_v = std::max(demo.sup_v, std::abs(x));
  demo.lip_v = grid_lipschitz(v, g);
  for (int j : js) {
    const auto m = fejer_mean_t2(v, g, j);
    FejerDemoRow row;
    row.j = j;
    row.min_kernel_weight = m.min_kernel_weight;
    row.min_mean = *std::min_element(m.values.begin(), m.values.end());
    for (std::size_t i = 0; i < v.size(); ++i) {
      row.sup_error = std::max(row.sup_error, std::abs(m.values[i] - v[i]));
      row.sup_mean = std::max(row.sup_mean, std::abs(m.values[i]));
    }
    row.lip_mean = grid_lipschitz(m.values, g);
    demo.rows.push_back(row);
  }
  return demo;
}

}  // namespace dbar
