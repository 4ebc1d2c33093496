#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dbar {

/// Exact complex rational re + i·im.
struct QComplex {
  mpq_class re;
  mpq_class im;

  QComplex() : re(0), im(0) {}
  QComplex(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }
  QComplex(long r) : re(r), im(0) {}
  QComplex(int r) : re(r), im(0) {}

  /// Exact binary value of a double pair (no decimal rounding).
  static QComplex from_double(double re, double im = 0.0);
  static QComplex from_cplx(std::complex<double> z) { return from_double(z.real(), z.imag()); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  QComplex conj() const { return {re, -im}; }
  /// |·|² as an exact rational.
  mpq_class norm() const { return re * re + im * im; }
  std::complex<double> to_cplx() const { return {re.get_d(), im.get_d()}; }
  QComplex inverse() const;

  QComplex& operator+=(const QComplex& o);
  QComplex& operator-=(const QComplex& o);
  QComplex& operator*=(const QComplex& o);
  QComplex operator-() const { return {-re, -im}; }

  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
  friend QComplex operator/(const QComplex& a, const QComplex& b) { return a * b.inverse(); }
  friend bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
};

/// Integer power (negative exponents invert).
QComplex pow(const QComplex& base, int exp);

/// Parses a rational from "p/q", an integer, or a decimal literal (exact
/// decimal value, e.g. "0.1" is 1/10).
mpq_class parse_rational(std::string_view text);

std::string to_string(const QComplex& c);

}  // namespace dbar
