#include "dbar/rational.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace dbar {

namespace {

using cplx = std::complex<double>;

DenomShape merge(const DenomShape& x, const DenomShape& y) {
  if (x.coord == 0) return y;
  if (y.coord == 0 || x == y) return x;
  throw std::invalid_argument("rational: denominator shape outside the supported class");
}

// R − z_c (holomorphic = true) or R − z̄_c.
PolyFunction linear_factor(const DenomShape& s, int dim, bool holomorphic) {
  PolyFunction p = PolyFunction::constant(dim, QComplex(s.R));
  const auto unit = MultiIndex::unit(s.coord);
  if (holomorphic) {
    p.add(unit, {}, -1);
  } else {
    p.add({}, unit, -1);
  }
  return p;
}

}  // namespace

RationalFunction::RationalFunction(PolyFunction num, DenomShape shape, int a, int b)
    : num_(std::move(num)), shape_(std::move(shape)), a_(a), b_(b) {
  if (a < 0 || b < 0) throw std::invalid_argument("rational: negative denominator exponent");
  if (shape_.coord == 0 && (a > 0 || b > 0)) throw std::invalid_argument("rational: denominator without a shape");
  if (shape_.coord > 0 && shape_.coord > num_.dim()) num_ = num_.with_dim(shape_.coord);
}

RationalFunction RationalFunction::raised(int a2, int b2) const {
  if (a2 < a_ || b2 < b_) throw std::invalid_argument("rational: cannot lower denominator exponents");
  if (a2 == a_ && b2 == b_) return *this;
  const int d = std::max(num_.dim(), shape_.coord);
  PolyFunction num = num_;
  if (a2 > a_) num = num * linear_factor(shape_, d, true).pow(a2 - a_);
  if (b2 > b_) num = num * linear_factor(shape_, d, false).pow(b2 - b_);
  return RationalFunction(std::move(num), shape_, a2, b2);
}

RationalFunction operator+(const RationalFunction& x, const RationalFunction& y) {
  const DenomShape s = merge(x.shape_, y.shape_);
  RationalFunction xs(x.num_, s, x.a_, x.b_);
  RationalFunction ys(y.num_, s, y.a_, y.b_);
  const int a = std::max(x.a_, y.a_);
  const int b = std::max(x.b_, y.b_);
  return RationalFunction(xs.raised(a, b).num_ + ys.raised(a, b).num_, s, a, b);
}

RationalFunction operator-(const RationalFunction& x, const RationalFunction& y) { return x + y.scaled(-1); }

RationalFunction operator*(const RationalFunction& x, const RationalFunction& y) {
  return RationalFunction(x.num_ * y.num_, merge(x.shape_, y.shape_), x.a_ + y.a_, x.b_ + y.b_);
}

RationalFunction RationalFunction::scaled(const QComplex& c) const {
  return RationalFunction(num_.scaled(c), shape_, a_, b_);
}

RationalFunction RationalFunction::conj() const {
  // R is real, so conj swaps the two denominator factors.
  return RationalFunction(num_.conj(), shape_, b_, a_);
}

RationalFunction RationalFunction::dz(int nu) const {
  RationalFunction out(num_.dz(nu), shape_, a_, b_);
  if (nu == shape_.coord && a_ > 0) out = out + RationalFunction(num_.scaled(a_), shape_, a_ + 1, b_);
  return out;
}

RationalFunction RationalFunction::dzbar(int nu) const {
  RationalFunction out(num_.dzbar(nu), shape_, a_, b_);
  if (nu == shape_.coord && b_ > 0) out = out + RationalFunction(num_.scaled(b_), shape_, a_, b_ + 1);
  return out;
}

RationalFunction RationalFunction::substitute(int nu, const QComplex& w) const {
  PolyFunction num = num_.substitute(nu, w);
  if (nu != shape_.coord) return RationalFunction(std::move(num), shape_, a_, b_);
  const QComplex base = QComplex(shape_.R) - w;
  if (base.is_zero() && (a_ > 0 || b_ > 0)) throw std::domain_error("rational: substitution hits the pole");
  const QComplex den = pow(base, a_) * pow(base.conj(), b_);
  return RationalFunction(num.scaled(den.inverse()));
}

cplx RationalFunction::eval(std::span<const cplx> z) const {
  cplx v = num_.eval(z);
  if (shape_.coord == 0) return v;
  const cplx base = shape_.R.get_d() - z[shape_.coord - 1];
  return v / (std::pow(base, a_) * std::pow(std::conj(base), b_));
}

FastRational::FastRational(const RationalFunction& f)
    : num_(f.num()), coord_(f.shape().coord), R_(f.shape().R.get_d()), a_(f.a()), b_(f.b()) {}

cplx FastRational::operator()(std::span<const cplx> z) const {
  cplx v = num_(z);
  if (coord_ == 0 || (a_ == 0 && b_ == 0)) return v;
  const cplx base = R_ - z[coord_ - 1];
  return v / (std::pow(base, a_) * std::pow(std::conj(base), b_));
}

RationalForm::RationalForm(const PolyForm& f) {
  for (const auto& c : f.comps()) comps_.emplace_back(c);
}

bool RationalForm::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const RationalFunction& c) { return c.is_zero(); });
}

RationalForm operator-(const RationalForm& x, const RationalForm& y) {
  RationalForm out(std::max(x.dim(), y.dim()));
  for (int nu = 1; nu <= out.dim(); ++nu) {
    RationalFunction a = nu <= x.dim() ? x.comp(nu) : RationalFunction(PolyFunction(out.dim()));
    RationalFunction b = nu <= y.dim() ? y.comp(nu) : RationalFunction(PolyFunction(out.dim()));
    out.comp(nu) = a - b;
  }
  return out;
}

std::vector<cplx> RationalForm::eval(std::span<const cplx> z) const {
  std::vector<cplx> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c.eval(z));
  return out;
}

void HolomorphicMap::validate() const {
  for (const auto& c : coords) {
    if (c.b() != 0) throw std::invalid_argument("holomorphic map: antiholomorphic denominator");
    for (const auto& [bi, x] : c.num().terms()) {
      if (!bi.beta.empty()) throw std::invalid_argument("holomorphic map: coordinate depends on conj(z)");
    }
    if (c.num().max_coord() > src_dim || c.shape().coord > src_dim) {
      throw std::invalid_argument("holomorphic map: coordinate exceeds source dimension");
    }
  }
}

std::vector<cplx> HolomorphicMap::eval(std::span<const cplx> z) const {
  std::vector<cplx> out;
  out.reserve(coords.size());
  for (const auto& c : coords) out.push_back(c.eval(z));
  return out;
}

HolomorphicMap identity_map(int dim) { return scaling_map(dim, 1); }

HolomorphicMap scaling_map(int dim, const QComplex& c) {
  HolomorphicMap m;
  m.src_dim = dim;
  for (int nu = 1; nu <= dim; ++nu) m.coords.emplace_back(PolyFunction::coordinate(dim, nu).scaled(c));
  return m;
}

RationalFunction compose(const PolyFunction& f, const HolomorphicMap& sigma) {
  if (f.max_coord() > static_cast<int>(sigma.coords.size())) {
    throw std::invalid_argument("compose: polynomial uses coordinates beyond the map's target");
  }
  // Powers are cached per (coordinate, exponent, conjugated).
  std::map<std::tuple<int, int, bool>, RationalFunction> cache;
  auto power = [&](int nu, int e, bool bar) -> const RationalFunction& {
    auto key = std::make_tuple(nu, e, bar);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const RationalFunction base = bar ? sigma.coords[nu - 1].conj() : sigma.coords[nu - 1];
    RationalFunction acc(PolyFunction::constant(sigma.src_dim, 1));
    for (int i = 0; i < e; ++i) acc = acc * base;
    return cache.emplace(key, std::move(acc)).first->second;
  };
  RationalFunction total(PolyFunction(sigma.src_dim));
  for (const auto& [bi, c] : f.terms()) {
    RationalFunction term(PolyFunction::constant(sigma.src_dim, c));
    for (const auto& e : bi.alpha.entries()) term = term * power(e.coord, e.exp, false);
    for (const auto& e : bi.beta.entries()) term = term * power(e.coord, e.exp, true);
    total = total + term;
  }
  return total;
}

RationalForm pullback(const HolomorphicMap& sigma, const PolyForm& f) {
  sigma.validate();
  if (f.dim() != static_cast<int>(sigma.coords.size())) throw std::invalid_argument("pullback: dimension mismatch");
  RationalForm out(sigma.src_dim);
  std::vector<RationalFunction> composed;
  for (int nu = 1; nu <= f.dim(); ++nu) composed.push_back(compose(f.comp(nu), sigma));
  for (int mu = 1; mu <= sigma.src_dim; ++mu) {
    RationalFunction acc(PolyFunction(sigma.src_dim));
    for (int nu = 1; nu <= f.dim(); ++nu) {
      if (composed[nu - 1].is_zero()) continue;
      const RationalFunction jac = sigma.coords[nu - 1].dz(mu);
      if (jac.is_zero()) continue;
      acc = acc + composed[nu - 1] * jac.conj();
    }
    out.comp(mu) = acc;
  }
  return out;
}

}  // namespace dbar
