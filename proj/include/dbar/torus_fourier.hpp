#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "dbar/poly.hpp"
#include "dbar/signed_index.hpp"

namespace dbar {

using TorusFunction = std::function<std::complex<double>(std::span<const std::complex<double>>)>;

/// ∏_ν max(0, 1 − |k_ν|/j). Throws std::invalid_argument if j < 1.
double fejer_coeff(int j, const SignedIndex& k);

/// ρ_t z: z_ν ↦ e^{2πi t_ν} z_ν.
std::vector<std::complex<double>> rotate(std::span<const std::complex<double>> z, std::span<const double> t);

/// ∫_{T^N} e^{−2πikt} v(ρ_t z) dλ(t) by the product trapezoid rule with
/// `grid` nodes per circle; N = z.size(). Throws std::invalid_argument when
/// grid ≤ 2 max|k_ν| (aliasing).
std::complex<double> fourier_component(const TorusFunction& v, std::span<const std::complex<double>> z,
                                       const SignedIndex& k, int grid = 64);

/// Equivariant components v_k of a function, each evaluable at any z.
struct FourierComponentSet {
  int dim = 0;
  std::map<SignedIndex, TorusFunction> components;
  /// Every k with max|k_ν| ≤ coverage is either stored or known to vanish.
  int coverage = 0;
  /// True when all unstored components vanish (polynomial input).
  bool exhaustive = false;

  /// Closed-form components from the bi-degree split.
  static FourierComponentSet from_poly(const PolyFunction& u);
  /// Quadrature components of a black-box v for all max|k_ν| ≤ coverage.
  static FourierComponentSet from_samples(TorusFunction v, int dim, int coverage, int grid = 64);
};

/// v^j(z) = Σ_{max|k_ν| < j} fejer_coeff(j, k) v_k(z). Throws
/// std::invalid_argument when a needed component is missing.
std::complex<double> cesaro_mean(const FourierComponentSet& set, int j, std::span<const std::complex<double>> z);

/// Largest |ρ_t* v_k(z) − e^{2πikt} v_k(z)| over random rotations t.
double equivariance_defect(const FourierComponentSet& set, std::span<const std::complex<double>> z, int rotations,
                           std::uint64_t seed);

/// Fejér means on T² of a function sampled on a g×g grid (row-major,
/// values[i1·g + i2] at t = (i1/g, i2/g)). Uses the discrete Fourier
/// coefficients of the samples.
struct FejerMean {
  int j = 0;
  std::vector<double> values;  // the mean at the same grid nodes
  double min_kernel_weight = 0.0;
};
FejerMean fejer_mean_t2(std::span<const double> values, int g, int j);

struct FejerDemoRow {
  int j = 0;
  double sup_error = 0.0;
  double sup_mean = 0.0;  // |v^j|₀
  double lip_mean = 0.0;  // |v^j|₁ by grid difference quotients
  double min_kernel_weight = 0.0;
  double min_mean = 0.0;
};
struct FejerDemo {
  int grid = 0;
  double sup_v = 0.0;
  double lip_v = 0.0;
  std::vector<FejerDemoRow> rows;
};

/// v(t) = |sin πt₁| + |sin πt₂| sampled on a g×g grid, Fejér means at each j.
FejerDemo fejer_demo(std::span<const int> js, int g = 256);

}  // namespace dbar
