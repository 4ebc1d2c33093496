#pragma once

#include <complex>
#include <compare>
#include <map>
#include <span>
#include <vector>

#include "dbar/exact.hpp"
#include "dbar/multiindex.hpp"
#include "dbar/signed_index.hpp"

namespace dbar {

/// Exponent pair of a monomial z^α z̄^β.
struct BiIndex {
  MultiIndex alpha;
  MultiIndex beta;
  friend bool operator==(const BiIndex&, const BiIndex&) = default;
  friend std::strong_ordering operator<=>(const BiIndex& a, const BiIndex& b) {
    if (auto c = a.alpha <=> b.alpha; c != 0) return c;
    return a.beta <=> b.beta;
  }
};

/// Polynomial Σ c_{αβ} z^α z̄^β on C^dim with exact coefficients.
class PolyFunction {
 public:
  using Terms = std::map<BiIndex, QComplex>;

  explicit PolyFunction(int dim = 0);
  static PolyFunction monomial(int dim, const MultiIndex& alpha, const MultiIndex& beta, const QComplex& c = 1);
  static PolyFunction constant(int dim, const QComplex& c);
  /// z_ν as a polynomial.
  static PolyFunction coordinate(int dim, int nu);

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest |α| + |β| over stored terms, −1 for the zero polynomial.
  int degree() const;
  /// Largest coordinate used by any term.
  int max_coord() const;

  /// Adds c·z^α z̄^β, erasing the term when it cancels.
  void add(const MultiIndex& alpha, const MultiIndex& beta, const QComplex& c);
  QComplex coeff(const MultiIndex& alpha, const MultiIndex& beta) const;

  PolyFunction& operator+=(const PolyFunction& o);
  PolyFunction& operator-=(const PolyFunction& o);
  friend PolyFunction operator+(PolyFunction a, const PolyFunction& b) { return a += b; }
  friend PolyFunction operator-(PolyFunction a, const PolyFunction& b) { return a -= b; }
  friend PolyFunction operator*(const PolyFunction& a, const PolyFunction& b);
  PolyFunction scaled(const QComplex& c) const;
  PolyFunction pow(int exp) const;

  /// Complex conjugate: swaps α and β and conjugates coefficients.
  PolyFunction conj() const;
  PolyFunction dz(int nu) const;
  PolyFunction dzbar(int nu) const;
  /// Termwise antiderivative in z̄_ν: z^α z̄^β ↦ z^α z̄^{β+e_ν}/(β_ν+1).
  PolyFunction antideriv_zbar(int nu) const;

  /// Same polynomial viewed on C^new_dim; throws if a used coordinate exceeds it.
  PolyFunction with_dim(int new_dim) const;
  /// Substitutes z_ν = 0 for ν > n and views the result on C^n.
  PolyFunction restricted(int n) const;
  /// Substitutes z_ν = w (and z̄_ν = conj w) exactly.
  PolyFunction substitute(int nu, const QComplex& w) const;
  /// Substitutes z_ν ↦ p and z̄_ν ↦ conj(p) for polynomial p.
  PolyFunction compose_coordinate(int nu, const PolyFunction& p) const;

  /// Part with torus character k = α − β.
  std::map<SignedIndex, PolyFunction> bidegree_split() const;

  std::complex<double> eval(std::span<const std::complex<double>> z) const;
  QComplex eval_exact(std::span<const QComplex> z) const;

  friend bool operator==(const PolyFunction& a, const PolyFunction& b) { return a.dim_ == b.dim_ && a.terms_ == b.terms_; }

 private:
  int dim_;
  Terms terms_;
};

/// Double-precision snapshot of a PolyFunction for hot evaluation loops.
class FastPoly {
 public:
  FastPoly() = default;
  explicit FastPoly(const PolyFunction& p);
  std::complex<double> operator()(std::span<const std::complex<double>> z) const;

 private:
  struct Factor {
    int slot;  // 2(ν−1) for z_ν, 2(ν−1)+1 for z̄_ν
    int exp;
  };
  struct Term {
    std::complex<double> coeff;
    std::vector<Factor> factors;
  };
  std::vector<Term> terms_;
  int dim_ = 0;
};

/// (0,1)-form Σ_ν f_ν dz̄_ν on C^dim with polynomial coefficients.
class PolyForm {
 public:
  explicit PolyForm(int dim = 0);
  explicit PolyForm(std::vector<PolyFunction> comps);

  int dim() const { return static_cast<int>(comps_.size()); }
  const PolyFunction& comp(int nu) const;
  PolyFunction& comp(int nu);
  const std::vector<PolyFunction>& comps() const { return comps_; }
  bool is_zero() const;
  int degree() const;

  PolyForm& operator+=(const PolyForm& o);
  PolyForm& operator-=(const PolyForm& o);
  friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
  friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
  PolyForm scaled(const QComplex& c) const;

  /// Pullback by the coordinate projection onto C^n: drops dz̄_ν for ν > n
  /// and substitutes z_ν = 0 there.
  PolyForm restricted(int n) const;
  /// Same form on a larger C^new_dim (extra components zero).
  PolyForm with_dim(int new_dim) const;

  std::vector<std::complex<double>> eval(std::span<const std::complex<double>> z) const;
  /// f(z; ξ) = Σ f_ν(z) conj(ξ_ν).
  std::complex<double> apply(std::span<const std::complex<double>> z, std::span<const std::complex<double>> xi) const;

  friend bool operator==(const PolyForm& a, const PolyForm& b) { return a.comps_ == b.comps_; }

 private:
  std::vector<PolyFunction> comps_;
};

PolyForm dbar(const PolyFunction& u);
/// Exact cross-derivative test ∂f_ν/∂z̄_μ = ∂f_μ/∂z̄_ν.
bool is_closed(const PolyForm& f);
/// U with dbar(U) = f identically; throws std::invalid_argument if f is not closed.
PolyFunction particular_solution(const PolyForm& f);

}  // namespace dbar
