#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "dbar/multiindex.hpp"
#include "dbar/point.hpp"

namespace dbar {

enum class Provenance { explicit_series, extracted };

/// Monomial expansion h ∼ Σ a_k z^k declared on the l¹ ball B(radius).
struct MonomialSeries {
  std::map<MultiIndex, std::complex<double>> coeffs;
  double radius = 1.0;
  Provenance provenance = Provenance::explicit_series;
  /// For a truncation: highest grade whose coefficients are all stored.
  int stored_grade = 0;
  /// Bound a ≥ sup_k |a_k| R^‖k‖ k^k/‖k‖^‖k‖ over all k, stored or not.
  /// Needed for the tail of a truncated series.
  std::optional<double> tail_bound;

  /// Highest stored order, −1 when empty.
  int max_grade() const;
};

struct SeriesValue {
  std::complex<double> value;
  double tail = 0.0;  // rigorous bound on the omitted part, +inf if unknown
};

/// Σ a_k z^k over stored k. Explicit series have zero tail; truncations
/// use a·(Δ(1, z/R) − Δ_≤D(1, z/R)). Throws std::domain_error if ‖z‖ ≥ radius.
SeriesValue eval(const MonomialSeries& h, const Point& z);

/// [h]_r = sup_k |a_k| r^‖k‖ k^k/‖k‖^‖k‖ over stored k.
double bracket_norm(const MonomialSeries& h, double r);
/// The a of the coefficient bound, i.e. bracket_norm(h, R).
double coeff_bound(const MonomialSeries& h, double R);

using HoloFunction = std::function<std::complex<double>(std::span<const std::complex<double>>)>;

/// Per-coordinate torus radii ρ_ν = (R/2)·2^{−ν} used by `extract`.
std::vector<double> extraction_radii(int dim, double R);

/// Coefficients a_k, ‖k‖ ≤ max_grade, of a holomorphic function on B_N(R)
/// by the trapezoid rule on the torus of radii `extraction_radii`, `grid`
/// nodes per circle (0 selects 2·max_grade + 1). Magnitudes below 1e−14 are
/// dropped. Throws std::invalid_argument when grid ≤ max_grade (aliasing).
MonomialSeries extract(const HoloFunction& hfun, int dim, double R, int max_grade, int grid = 0);

struct EntireSplit {
  MonomialSeries psi;
  std::set<MultiIndex> kept;
  double remainder_norm = 0.0;  // [h − ψ]_r
};

/// ψ = Σ_{k∈K} a_k z^k with K = {k : |a_k| r^‖k‖ k^k/‖k‖^‖k‖ ≥ ε}.
/// Requires 0 < r < h.radius and ε > 0.
EntireSplit entire_split(const MonomialSeries& h, double r, double epsilon);

MonomialSeries operator-(const MonomialSeries& a, const MonomialSeries& b);

}  // namespace dbar
