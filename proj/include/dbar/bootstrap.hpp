#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "dbar/poly.hpp"
#include "dbar/rational.hpp"
#include "dbar/report.hpp"

namespace dbar {

/// π(z) = z′(R − Z_N)/(R − z_N) from C^N to C^{N−1}, and ε(z′) = (z′, Z_N).
struct ProjectionRecord {
  mpq_class R;
  mpq_class Z_N;
  int N = 0;
  HolomorphicMap pi;

  std::vector<std::complex<double>> project(std::span<const std::complex<double>> z) const;
  std::vector<std::complex<double>> embed(std::span<const std::complex<double>> zp) const;
  /// π∘ε = id, checked by exact substitution z_N = Z_N in each coordinate of π.
  bool left_inverse_exact() const;
  /// r′ = (R − Z_N) r / R.
  double image_radius(double r) const;
};

/// Throws std::domain_error unless 0 ≤ Z_N < R, std::invalid_argument if N < 2.
ProjectionRecord central_projection(double R, double Z_N, int N);

/// ε*f: substitutes z_N = Z_N and drops the dz̄_N component.
PolyForm slice_form(const PolyForm& f, const mpq_class& Z_N);

/// F = f − π*f′ together with the pieces needed for g in the division step.
struct CorrectionForm {
  RationalForm F;
  RationalForm dbar_FN;  // (∂F_N/∂z̄_ν)_ν
  bool slice_zero = false;     // F_ν(z′, Z_N) = 0 for ν < N, exactly
  std::vector<FastRational> fast_F;
  std::vector<FastRational> fast_dbar_FN;
};

CorrectionForm correction_form(const PolyForm& f, const ProjectionRecord& proj);

/// g = Σ_{ν<N} F_ν dz̄_ν/(z_N − Z_N) − ((z̄_N − Z_N)/(z_N − Z_N)) ∂̄F_N, and g = 0
/// when |z_N − Z_N| < 1e-8.
std::vector<std::complex<double>> g_value(const CorrectionForm& c, std::span<const std::complex<double>> z,
                                          double Z_N);

struct BootstrapLevel {
  int N = 0;
  double R = 0.0;
  double r = 0.0;
  SolveReport report;
};

struct BootstrapResult {
  std::vector<BootstrapLevel> levels;  // levels[0] is the top (dimension N)
  std::function<std::complex<double>(std::span<const std::complex<double>>)> U;
  std::complex<double> U_at_Z;
  bool all_pass() const;
};

struct BootstrapOptions {
  int grid = 48;          // nodes per real axis of the least-squares grid
  int pompeiu_radial = 16;
  double lsq_tol = 1e-8;
  int lsq_max_iter = 600;
  int seminorm_samples = 400;
  std::uint64_t seed = 7;
};

/// Solves ∂̄U = f on B_N(r) with U(Z) = 0 by the projection recursion; the
/// base case N = 1 is U(z) = P(z) − P(Z) with P the Pompeiu integral over the
/// disc of radius R. Requires N ≤ 2, Z ≥ 0 componentwise, ‖Z‖ < r < R.
BootstrapResult bootstrap_solve(const PolyForm& f, std::span<const double> Z, double R, double r,
                                const BootstrapOptions& opt = {});

}  // namespace dbar
