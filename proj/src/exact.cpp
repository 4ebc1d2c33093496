#include "dbar/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace dbar {

QComplex QComplex::from_double(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) throw std::invalid_argument("exact: non-finite value");
  return {mpq_class(re), mpq_class(im)};
}

QComplex QComplex::inverse() const {
  const mpq_class n = norm();
  if (sgn(n) == 0) throw std::domain_error("exact: division by zero");
  return {re / n, -im / n};
}

QComplex& QComplex::operator+=(const QComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

QComplex& QComplex::operator-=(const QComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

QComplex& QComplex::operator*=(const QComplex& o) {
  mpq_class r = re * o.re - im * o.im;
  mpq_class i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

QComplex pow(const QComplex& base, int exp) {
  QComplex b = exp < 0 ? base.inverse() : base;
  unsigned e = static_cast<unsigned>(exp < 0 ? -exp : exp);
  QComplex out(1);
  while (e) {
    if (e & 1U) out *= b;
    e >>= 1U;
    if (e) b *= b;
  }
  return out;
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("exact: empty rational");
  const auto dot = s.find('.');
  const auto exp_pos = s.find_first_of("eE");
  try {
    if (dot == std::string::npos && exp_pos == std::string::npos) {
      mpq_class q(s, 10);
      if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator");
      q.canonicalize();
      return q;
    }
    // Decimal literal: mantissa digits over a power of ten.
    std::string mant = s.substr(0, exp_pos);
    long e10 = 0;
    if (exp_pos != std::string::npos) e10 = std::stol(s.substr(exp_pos + 1));
    if (dot != std::string::npos && dot < mant.size()) {
      e10 -= static_cast<long>(mant.size() - dot - 1);
      mant.erase(dot, 1);
    }
    mpz_class num(mant, 10);
    mpz_class ten = 1;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(e10 < 0 ? -e10 : e10));
    mpq_class q = e10 < 0 ? mpq_class(num, ten) : mpq_class(num * ten);
    q.canonicalize();
    return q;
  } catch (const std::exception&) {
    throw std::invalid_argument("exact: bad rational '" + s + "'");
  }
}

std::string to_string(const QComplex& c) {
  return "(" + c.re.get_str() + ")+(" + c.im.get_str() + ")i";
}

}  // namespace dbar
