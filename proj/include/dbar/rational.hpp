#pragma once

#include <complex>
#include <span>
#include <vector>

#include "dbar/poly.hpp"

namespace dbar {

/// Denominator family (R − z_c)^a (R − z̄_c)^b shared by every rational
/// object in a computation. coord = 0 means "no denominator yet".
struct DenomShape {
  int coord = 0;
  mpq_class R = 0;
  friend bool operator==(const DenomShape& a, const DenomShape& b) { return a.coord == b.coord && a.R == b.R; }
};

/// num / ((R − z_c)^a (R − z̄_c)^b).
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(PolyFunction num) : num_(std::move(num)) {}
  RationalFunction(PolyFunction num, DenomShape shape, int a, int b);

  const PolyFunction& num() const { return num_; }
  const DenomShape& shape() const { return shape_; }
  int a() const { return a_; }
  int b() const { return b_; }
  int dim() const { return num_.dim(); }
  bool is_zero() const { return num_.is_zero(); }

  /// Rewrites over (R − z_c)^a2 (R − z̄_c)^b2 with a2 ≥ a, b2 ≥ b.
  RationalFunction raised(int a2, int b2) const;

  friend RationalFunction operator+(const RationalFunction& x, const RationalFunction& y);
  friend RationalFunction operator-(const RationalFunction& x, const RationalFunction& y);
  friend RationalFunction operator*(const RationalFunction& x, const RationalFunction& y);
  RationalFunction scaled(const QComplex& c) const;
  RationalFunction conj() const;
  RationalFunction dz(int nu) const;
  RationalFunction dzbar(int nu) const;

  /// z_ν = w substituted exactly; if ν is the denominator coordinate the
  /// denominator becomes a constant and is folded into the numerator.
  RationalFunction substitute(int nu, const QComplex& w) const;

  std::complex<double> eval(std::span<const std::complex<double>> z) const;

 private:
  PolyFunction num_;
  DenomShape shape_;
  int a_ = 0;
  int b_ = 0;
};

/// Double-precision snapshot of a RationalFunction.
class FastRational {
 public:
  FastRational() = default;
  explicit FastRational(const RationalFunction& f);
  std::complex<double> operator()(std::span<const std::complex<double>> z) const;

 private:
  FastPoly num_;
  int coord_ = 0;
  double R_ = 0.0;
  int a_ = 0;
  int b_ = 0;
};

/// Σ F_ν dz̄_ν with rational coefficients.
class RationalForm {
 public:
  explicit RationalForm(int dim = 0) : comps_(static_cast<std::size_t>(dim)) {}
  explicit RationalForm(const PolyForm& f);
  int dim() const { return static_cast<int>(comps_.size()); }
  const RationalFunction& comp(int nu) const { return comps_.at(nu - 1); }
  RationalFunction& comp(int nu) { return comps_.at(nu - 1); }
  bool is_zero() const;
  friend RationalForm operator-(const RationalForm& x, const RationalForm& y);
  std::vector<std::complex<double>> eval(std::span<const std::complex<double>> z) const;

 private:
  std::vector<RationalFunction> comps_;
};

/// Holomorphic map σ: C^src → C^dst with coordinates p_ν/(R − z_c)^{d_ν}.
struct HolomorphicMap {
  int src_dim = 0;
  std::vector<RationalFunction> coords;

  /// Throws std::invalid_argument if some coordinate depends on z̄ or has a
  /// z̄-denominator.
  void validate() const;
  std::vector<std::complex<double>> eval(std::span<const std::complex<double>> z) const;
};

HolomorphicMap identity_map(int dim);
/// z ↦ c·z on C^dim.
HolomorphicMap scaling_map(int dim, const QComplex& c);

/// Composition f ∘ σ of a polynomial on C^dst with σ.
RationalFunction compose(const PolyFunction& f, const HolomorphicMap& sigma);
/// (σ*f)_μ = Σ_ν f_ν(σ) conj(∂σ_ν/∂z_μ), exactly.
RationalForm pullback(const HolomorphicMap& sigma, const PolyForm& f);

}  // namespace dbar
