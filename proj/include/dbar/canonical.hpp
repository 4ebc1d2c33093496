#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dbar/poly.hpp"
#include "dbar/report.hpp"
#include "dbar/signed_index.hpp"

namespace dbar {

/// Z(0) = 0, Z(k) = r·k/‖k‖ for k ≥ 0, as exact rationals on C^dim.
std::vector<QComplex> node(const MultiIndex& k, const mpq_class& r, int dim);

/// Components u_k of the canonical solution built from a base solution U:
/// u_k = U_k − U_k(Z(k)) Z(k)^{−k} z^k for k ≥ 0, u_k = U_k otherwise.
std::map<SignedIndex, PolyFunction> normalize_components(const PolyFunction& U, double r);

/// normalize_components(particular_solution(f), r). Throws
/// std::invalid_argument if f is not closed or r ≤ 0.
std::map<SignedIndex, PolyFunction> canonical_components(const PolyForm& f, double r);

struct CanonicalSolution {
  std::map<SignedIndex, PolyFunction> corrected_components;
  int assembly_grade = 0;
  double r = 0.0;
  /// Limit of the Cesàro means, Σ u_k (the family is finite).
  PolyFunction u;
  /// Mean of order j, Σ fejer_coeff(j, k) u_k with exact rational weights.
  PolyFunction u_mean;
  SolveReport report;
};

/// Canonical solution and its Cesàro mean of order j. The report records
/// "dbar_exact" (dbar(u) = f), "normalized" (u_k(Z(k)) = 0 for k ≥ 0) and
/// "equivariant" (every term of u_k has α − β = k), all symbolic; the
/// sampled sup of |dbar(u_mean) − f| on B_N(r) is "mean_residual_sup".
CanonicalSolution canonical_solve(const PolyForm& f, double r, int j);

/// Σ fejer_coeff(j, k) u_k with exact weights ∏(1 − |k_ν|/j).
PolyFunction cesaro_assemble(const std::map<SignedIndex, PolyFunction>& comps, int dim, int j);

struct Lemma51Constants {
  double A = 0.0;
  double Q = 1.0;
};

/// A and Q for the hypothesis |U(z)| ≤ A Q^{#z} with U the particular
/// solution on C^n: Q = 1 and A the largest |U| seen over `samples` random
/// points of B_n(r) and the nodes' component values |U_k(Z(k))|.
Lemma51Constants lemma51_constants(const PolyForm& f, double r, int n, int samples = 400, std::uint64_t seed = 11);

struct Lemma51Result {
  BoundCheck check;        // worst sample: lhs |u − U|, rhs A Δ_upper(Q, z/r)
  double worst_ratio = 0;  // max lhs/rhs over samples with rhs > 0
  int samples = 0;
};

/// Samples z in B_n(0.9 r) and checks |u(z) − U(z)| ≤ A Δ_upper(Q, z/r), with
/// u the canonical solution of f restricted to C^n and U the particular
/// solution there.
Lemma51Result lemma51_check(const PolyForm& f, double r, int n, double A, double Q, int samples = 100,
                            std::uint64_t seed = 5);

/// True when the canonical solutions agree after z_ν = 0 for ν > n. Throws
/// std::invalid_argument if f₁ and f₂ do not agree on C^n.
bool restriction_consistency(const PolyForm& f1, const PolyForm& f2, int n, double r);

struct TowerLevel {
  int N = 0;
  PolyFunction u;           // canonical solution of f^N on C^N
  bool agrees_above = true; // u^{N'} restricted to C^N equals u for all N' > N
  double Q = 1.0;           // smallest Q ≥ 1 passing the bound on the samples
  BoundCheck bound;
};

struct TowerReport {
  std::vector<TowerLevel> levels;
  bool stable = true;
  bool all_pass() const;
};

/// For each N in N_list, solves for f^N (coordinates above N zeroed) and
/// checks exact agreement on slices, plus |u(z)| ≤ 2RQΔ(Q, z/r)(|f|₀+R|f|₁)
/// with measured Q on sampled B_N(0.9 r).
TowerReport truncation_tower(const PolyForm& f, double R, double r, const std::vector<int>& N_list, int samples = 60,
                             std::uint64_t seed = 3);

struct SupConstantRow {
  int N = 0;
  double C = 0.0;    // max over forms and samples of (|u(z)|/(R|f|₀))^{1/#z}
  double sup_u = 0.0;
  int forms_used = 0;
  int samples = 0;
};

/// Canonical solutions with nodes at r′ = (R + r)/2 for each form
/// restricted to C^N; sup of |u| sampled on B_N(r).
std::vector<SupConstantRow> sup_constant_fit(const std::vector<PolyForm>& corpus, double R, double r,
                                  const std::vector<int>& N_list, int samples = 400, std::uint64_t seed = 17);

}  // namespace dbar
