#pragma once

#include <span>
#include <vector>

#include "dbar/point.hpp"

namespace dbar {

/// Relative slack applied to every reported bound to absorb floating-point
/// rounding in the summation (declared, not derived from interval arithmetic).
inline constexpr double kRoundingSlack = 1e-12;

/// Two-sided enclosure of Δ(q, z) = Σ_k (‖k‖^‖k‖/k^k) |q|^{#k} |z^k|.
///
/// `lower` is the partial sum over ‖k‖ ≤ degree_cap (deflated by the
/// rounding slack). `upper` adds the tail of the H(Q, η, n) domination,
/// Q^n e^{n s_η} η^{D+1}/(1−η) with Q = max(1, |q|). `upper_counting`
/// instead adds the finite-support counting tail
/// Q^{#z} Σ_{j>D} C(j+#z−1, #z−1) ‖z‖^j, which is far sharper when #z is
/// small. Both are rigorous; `best_upper()` is their minimum.
struct DeltaEnclosure {
  double lower = 1.0;
  double upper = 1.0;
  double upper_counting = 1.0;
  int degree_cap = 0;
  double eta = 0.5;
  int n_split = 0;
  int s_eta = 0;

  double best_upper() const { return upper < upper_counting ? upper : upper_counting; }
  double width() const { return best_upper() - lower; }
};

/// Least integer s_η ≥ 1 with (eη)^s s! ≤ s^s for every s ≥ s_η, found by
/// direct search. Requires 0 < η < 1.
int minimal_s_eta(double eta);

/// Graded terms S_j = Σ_{‖k‖=j} (j^j/k^k) a^{#k} ∏ x_ν^{k_ν} for j = 0..cap,
/// where x are the (positive) moduli and a = |q|. Computed through the
/// exponential generating function ∏_ν (1 + a Σ_m x_ν^m t^m / m^m).
std::vector<long double> delta_grade_terms(double abs_q, std::span<const double> moduli, int cap);

/// Σ_{‖k‖ ≤ degree_cap} of the Δ series. Throws std::domain_error if ‖z‖ ≥ 1.
double delta_partial(cplx q, const Point& z, int degree_cap);

/// Enclosure at a fixed degree cap. Throws std::domain_error if ‖z‖ ≥ 1 or
/// no η < 1 passes the H-set preconditions.
DeltaEnclosure delta_enclose(cplx q, const Point& z, int degree_cap);

/// Smallest-cap enclosure whose width is at most `target_width`; the cap is
/// solved for from the closed-form tails before the partial sum is formed.
/// Throws std::domain_error if the needed cap exceeds `max_cap`.
DeltaEnclosure delta_enclose_to_width(cplx q, const Point& z, double target_width, int max_cap = 20000);

/// Rigorous upper bound for Δ(q, z) with relative over-estimate ≤ rel_tol.
double delta_upper(cplx q, const Point& z, double rel_tol = 1e-9);

struct DeltaSample {
  cplx q;
  Point z;
};

/// Degree cap used by corollary43_measure when none is given.
inline constexpr int kCorollary43Cap = 32;

/// Smallest c with Δ_upper(q, z) ≤ max(1, |q|^{#z}) e^{c #z} on every sample,
/// where Δ_upper is the H-set enclosure bound at `degree_cap`. Samples with
/// #z = 0 are skipped, and 0 is returned when all are. Throws
/// std::invalid_argument on an empty list or a sample with ‖z‖ ≥ theta, and
/// std::domain_error when theta ∉ (0, 1).
double corollary43_measure(double theta, std::span<const DeltaSample> samples, int degree_cap = kCorollary43Cap);

}  // namespace dbar
