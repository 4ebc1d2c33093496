#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "dbar/poly.hpp"

namespace dbar {

using Sample = std::vector<std::complex<double>>;

/// Uniform point of the open l¹ ball {‖z‖ < radius} in C^dim. Moduli are
/// Dirichlet(2,…,2;1) scaled by the radius, phases uniform.
Sample sample_l1_ball(int dim, double radius, std::mt19937_64& rng);
std::vector<Sample> sample_l1_ball(int dim, double radius, int count, std::uint64_t seed);

/// Uniform point of the torus orbit boundary ‖z‖ = radius.
Sample sample_l1_sphere(int dim, double radius, std::mt19937_64& rng);

double l1_norm(std::span<const std::complex<double>> z);
double l1_distance(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b);

/// Sampled estimates of the sup and Lipschitz seminorms. Both are maxima
/// over the drawn sample set, hence lower bounds of the true suprema.
struct Seminorms {
  double sup0 = 0.0;
  double lip1 = 0.0;
  double ball_radius = 0.0;
  int sample_count = 0;
};

/// Vector-valued field on C^dim: coefficient vector (one entry for a
/// function, f_ν for a form). The value norm is the max over entries, which
/// is the dual norm of l¹.
using Field = std::function<std::vector<std::complex<double>>(std::span<const std::complex<double>>)>;

Seminorms seminorm_estimate(const Field& field, int dim, double radius, int samples, std::uint64_t seed);
Seminorms seminorm_estimate(const PolyFunction& u, double radius, int samples, std::uint64_t seed);
Seminorms seminorm_estimate(const PolyForm& f, double radius, int samples, std::uint64_t seed);

/// Monte Carlo estimate of Vol(l¹ unit ball)/Vol(Euclidean unit ball) in C^dim.
struct VolumeEstimate {
  double ratio = 0.0;
  double std_error = 0.0;
  int samples = 0;
};
VolumeEstimate l1_volume_ratio(int dim, int samples, std::uint64_t seed);

/// Right side of the sup bound for the l¹ ball B_N(R):
/// 2(R + √N·2R)(R/(R − ‖z‖))^N |f|₀.
double l1_ball_sup_bound(double R, int dim, double z_norm, double f_sup);

}  // namespace dbar
