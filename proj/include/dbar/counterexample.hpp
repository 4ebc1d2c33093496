#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "dbar/point.hpp"

namespace dbar {

/// Largest |ζ| accepted by lambda_fn and phi_fn (keeps ln|ζ|^{−2} > 1).
inline constexpr double kCxRadius = 0.6;

/// ζ^p ln ln |ζ|^{−2}, 0 at ζ = 0. Throws std::domain_error if |ζ| ≥ 0.6
/// and std::invalid_argument if p < 1.
std::complex<double> lambda_fn(std::complex<double> zeta, int p);

/// ζ^p/(ζ̄ ln|ζ|²), 0 at ζ = 0; the ∂̄-derivative of lambda_fn.
std::complex<double> phi_fn(std::complex<double> zeta, int p);

/// f(z; ξ) = Σ_ν φ(z_ν) conj(ξ_ν).
std::complex<double> form_eval(const Point& z, const Point& xi, int p);

/// ‖z‖_p^{p−1}·‖ξ‖_p, the Hölder bound for |form_eval(z, ξ, p)|.
double holder_bound(const Point& z, const Point& xi, int p);

struct CxConfig {
  int p = 1;
  double R = 0.25;
  std::vector<int> N_list;
};

struct CxRow {
  int N = 0;
  double a_N = 0.0;
  double deviation = 0.0;
};

/// For each N: L_n = ln ln(R^{−2} n^{2/p}) for n = 1..N, a_N the midpoint of
/// the range of L and deviation_N = R^p (max L − min L)/2. Throws
/// std::invalid_argument unless p ≥ 1, 0 < R and 2R < 0.6, and the N_list
/// is ascending and positive.
std::vector<CxRow> divergence_scan(const CxConfig& cfg);

/// Powers of two from 1 to n_max (n_max itself appended when not a power).
std::vector<int> doubling_list(int n_max);

/// ∫₀¹ e^{−2πipt} λ(e^{2πit}ζ) dt by the trapezoid rule on `grid` nodes.
std::complex<double> homogeneous_part(std::complex<double> zeta, int p, int grid = 64);

/// Centered finite-difference ∂̄λ at ζ with step h.
std::complex<double> dbar_lambda_fd(std::complex<double> zeta, int p, double h);

/// |d^m/dx^m λ(x)| at each x > 0 along the positive real axis, by a
/// centered difference with step x/8.
std::vector<double> radial_derivative_probe(int p, int order, const std::vector<double>& radii);

}  // namespace dbar
