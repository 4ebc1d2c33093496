#include "dbar/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace dbar {

namespace {

using cplx = std::complex<double>;

cplx ipow(cplx base, int e) {
  cplx out = 1.0;
  while (e > 0) {
    if (e & 1) out *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return out;
}

void check_coord(int dim, int nu, const char* where) {
  if (nu < 1 || nu > dim) throw std::out_of_range(std::string(where) + ": coordinate out of range");
}

}  // namespace

PolyFunction::PolyFunction(int dim) : dim_(dim) {
  if (dim < 0) throw std::invalid_argument("poly: negative dimension");
}

PolyFunction PolyFunction::monomial(int dim, const MultiIndex& alpha, const MultiIndex& beta, const QComplex& c) {
  PolyFunction p(dim);
  p.add(alpha, beta, c);
  return p;
}

PolyFunction PolyFunction::constant(int dim, const QComplex& c) { return monomial(dim, {}, {}, c); }

PolyFunction PolyFunction::coordinate(int dim, int nu) {
  check_coord(dim, nu, "poly");
  return monomial(dim, MultiIndex::unit(nu), {}, 1);
}

int PolyFunction::degree() const {
  int d = -1;
  for (const auto& [bi, c] : terms_) d = std::max(d, bi.alpha.order() + bi.beta.order());
  return d;
}

int PolyFunction::max_coord() const {
  int m = 0;
  for (const auto& [bi, c] : terms_) m = std::max({m, bi.alpha.max_coord(), bi.beta.max_coord()});
  return m;
}

void PolyFunction::add(const MultiIndex& alpha, const MultiIndex& beta, const QComplex& c) {
  if (c.is_zero()) return;
  if (alpha.max_coord() > dim_ || beta.max_coord() > dim_) throw std::out_of_range("poly: term exceeds dimension");
  BiIndex key{alpha, beta};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

QComplex PolyFunction::coeff(const MultiIndex& alpha, const MultiIndex& beta) const {
  auto it = terms_.find(BiIndex{alpha, beta});
  return it == terms_.end() ? QComplex{} : it->second;
}

PolyFunction& PolyFunction::operator+=(const PolyFunction& o) {
  if (o.dim_ > dim_) dim_ = o.dim_;
  for (const auto& [bi, c] : o.terms_) add(bi.alpha, bi.beta, c);
  return *this;
}

PolyFunction& PolyFunction::operator-=(const PolyFunction& o) {
  if (o.dim_ > dim_) dim_ = o.dim_;
  for (const auto& [bi, c] : o.terms_) add(bi.alpha, bi.beta, -c);
  return *this;
}

PolyFunction operator*(const PolyFunction& a, const PolyFunction& b) {
  PolyFunction out(std::max(a.dim_, b.dim_));
  for (const auto& [x, cx] : a.terms_) {
    for (const auto& [y, cy] : b.terms_) out.add(x.alpha + y.alpha, x.beta + y.beta, cx * cy);
  }
  return out;
}

PolyFunction PolyFunction::scaled(const QComplex& c) const {
  PolyFunction out(dim_);
  if (c.is_zero()) return out;
  for (const auto& [bi, x] : terms_) out.terms_.emplace(bi, x * c);
  return out;
}

PolyFunction PolyFunction::pow(int exp) const {
  if (exp < 0) throw std::invalid_argument("poly: negative power");
  PolyFunction out = constant(dim_, 1);
  PolyFunction base = *this;
  while (exp > 0) {
    if (exp & 1) out = out * base;
    exp >>= 1;
    if (exp) base = base * base;
  }
  return out;
}

PolyFunction PolyFunction::conj() const {
  PolyFunction out(dim_);
  for (const auto& [bi, c] : terms_) out.terms_.emplace(BiIndex{bi.beta, bi.alpha}, c.conj());
  return out;
}

PolyFunction PolyFunction::dz(int nu) const {
  PolyFunction out(dim_);
  for (const auto& [bi, c] : terms_) {
    const int e = bi.alpha.exponent(nu);
    if (e == 0) continue;
    out.add(bi.alpha.with_exponent(nu, e - 1), bi.beta, c * QComplex(e));
  }
  return out;
}

PolyFunction PolyFunction::dzbar(int nu) const {
  PolyFunction out(dim_);
  for (const auto& [bi, c] : terms_) {
    const int e = bi.beta.exponent(nu);
    if (e == 0) continue;
    out.add(bi.alpha, bi.beta.with_exponent(nu, e - 1), c * QComplex(e));
  }
  return out;
}

PolyFunction PolyFunction::antideriv_zbar(int nu) const {
  check_coord(dim_, nu, "poly antiderivative");
  PolyFunction out(dim_);
  for (const auto& [bi, c] : terms_) {
    const int e = bi.beta.exponent(nu) + 1;
    out.add(bi.alpha, bi.beta.with_exponent(nu, e), c * QComplex(mpq_class(1, e)));
  }
  return out;
}

PolyFunction PolyFunction::with_dim(int new_dim) const {
  if (max_coord() > new_dim) throw std::out_of_range("poly: terms exceed the requested dimension");
  PolyFunction out = *this;
  out.dim_ = new_dim;
  return out;
}

PolyFunction PolyFunction::restricted(int n) const {
  PolyFunction out(n);
  for (const auto& [bi, c] : terms_) {
    if (bi.alpha.supported_in(n) && bi.beta.supported_in(n)) out.terms_.emplace(bi, c);
  }
  return out;
}

PolyFunction PolyFunction::substitute(int nu, const QComplex& w) const {
  PolyFunction out(dim_);
  const QComplex wb = w.conj();
  for (const auto& [bi, c] : terms_) {
    const int a = bi.alpha.exponent(nu);
    const int b = bi.beta.exponent(nu);
    if (a == 0 && b == 0) {
      out.add(bi.alpha, bi.beta, c);
      continue;
    }
    out.add(bi.alpha.with_exponent(nu, 0), bi.beta.with_exponent(nu, 0), c * dbar::pow(w, a) * dbar::pow(wb, b));
  }
  return out;
}

PolyFunction PolyFunction::compose_coordinate(int nu, const PolyFunction& p) const {
  const int d = std::max(dim_, p.dim_);
  PolyFunction out(d);
  const PolyFunction pc = p.conj();
  for (const auto& [bi, c] : terms_) {
    const int a = bi.alpha.exponent(nu);
    const int b = bi.beta.exponent(nu);
    PolyFunction rest = monomial(d, bi.alpha.with_exponent(nu, 0), bi.beta.with_exponent(nu, 0), c);
    if (a > 0) rest = rest * p.pow(a);
    if (b > 0) rest = rest * pc.pow(b);
    out += rest;
  }
  return out;
}

std::map<SignedIndex, PolyFunction> PolyFunction::bidegree_split() const {
  std::map<SignedIndex, PolyFunction> out;
  for (const auto& [bi, c] : terms_) {
    auto k = SignedIndex::difference(bi.alpha, bi.beta);
    auto [it, inserted] = out.try_emplace(std::move(k), dim_);
    it->second.terms_.emplace(bi, c);
  }
  return out;
}

cplx PolyFunction::eval(std::span<const cplx> z) const {
  if (static_cast<int>(z.size()) < max_coord()) throw std::out_of_range("poly: point has too few coordinates");
  cplx total = 0.0;
  for (const auto& [bi, c] : terms_) {
    cplx term = c.to_cplx();
    for (const auto& e : bi.alpha.entries()) term *= ipow(z[e.coord - 1], e.exp);
    for (const auto& e : bi.beta.entries()) term *= ipow(std::conj(z[e.coord - 1]), e.exp);
    total += term;
  }
  return total;
}

QComplex PolyFunction::eval_exact(std::span<const QComplex> z) const {
  if (static_cast<int>(z.size()) < max_coord()) throw std::out_of_range("poly: point has too few coordinates");
  QComplex total;
  for (const auto& [bi, c] : terms_) {
    QComplex term = c;
    for (const auto& e : bi.alpha.entries()) term *= dbar::pow(z[e.coord - 1], e.exp);
    for (const auto& e : bi.beta.entries()) term *= dbar::pow(z[e.coord - 1].conj(), e.exp);
    total += term;
  }
  return total;
}

FastPoly::FastPoly(const PolyFunction& p) : dim_(p.max_coord()) {
  for (const auto& [bi, c] : p.terms()) {
    Term t{c.to_cplx(), {}};
    for (const auto& e : bi.alpha.entries()) t.factors.push_back({2 * (e.coord - 1), e.exp});
    for (const auto& e : bi.beta.entries()) t.factors.push_back({2 * (e.coord - 1) + 1, e.exp});
    terms_.push_back(std::move(t));
  }
}

cplx FastPoly::operator()(std::span<const cplx> z) const {
  if (static_cast<int>(z.size()) < dim_) throw std::out_of_range("poly: point has too few coordinates");
  cplx total = 0.0;
  for (const auto& t : terms_) {
    cplx term = t.coeff;
    for (const auto& f : t.factors) {
      const cplx base = (f.slot & 1) ? std::conj(z[f.slot / 2]) : z[f.slot / 2];
      term *= ipow(base, f.exp);
    }
    total += term;
  }
  return total;
}

PolyForm::PolyForm(int dim) {
  if (dim < 0) throw std::invalid_argument("form: negative dimension");
  comps_.assign(static_cast<std::size_t>(dim), PolyFunction(dim));
}

PolyForm::PolyForm(std::vector<PolyFunction> comps) : comps_(std::move(comps)) {
  const int n = dim();
  for (auto& c : comps_) c = c.with_dim(n);
}

const PolyFunction& PolyForm::comp(int nu) const {
  check_coord(dim(), nu, "form");
  return comps_[nu - 1];
}

PolyFunction& PolyForm::comp(int nu) {
  check_coord(dim(), nu, "form");
  return comps_[nu - 1];
}

bool PolyForm::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const PolyFunction& c) { return c.is_zero(); });
}

int PolyForm::degree() const {
  int d = -1;
  for (const auto& c : comps_) d = std::max(d, c.degree());
  return d;
}

PolyForm& PolyForm::operator+=(const PolyForm& o) {
  if (o.dim() > dim()) *this = with_dim(o.dim());
  for (int nu = 1; nu <= o.dim(); ++nu) comps_[nu - 1] += o.comp(nu);
  return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& o) {
  if (o.dim() > dim()) *this = with_dim(o.dim());
  for (int nu = 1; nu <= o.dim(); ++nu) comps_[nu - 1] -= o.comp(nu);
  return *this;
}

PolyForm PolyForm::scaled(const QComplex& c) const {
  PolyForm out(dim());
  for (int nu = 1; nu <= dim(); ++nu) out.comp(nu) = comp(nu).scaled(c);
  return out;
}

PolyForm PolyForm::restricted(int n) const {
  if (n > dim()) return with_dim(n);
  PolyForm out(n);
  for (int nu = 1; nu <= n; ++nu) out.comp(nu) = comp(nu).restricted(n);
  return out;
}

PolyForm PolyForm::with_dim(int new_dim) const {
  if (new_dim < dim()) throw std::invalid_argument("form: with_dim cannot shrink; use restricted");
  PolyForm out(new_dim);
  for (int nu = 1; nu <= dim(); ++nu) out.comp(nu) = comp(nu).with_dim(new_dim);
  return out;
}

std::vector<cplx> PolyForm::eval(std::span<const cplx> z) const {
  std::vector<cplx> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c.eval(z));
  return out;
}

cplx PolyForm::apply(std::span<const cplx> z, std::span<const cplx> xi) const {
  cplx total = 0.0;
  for (std::size_t nu = 0; nu < comps_.size() && nu < xi.size(); ++nu) {
    if (xi[nu] != cplx{}) total += comps_[nu].eval(z) * std::conj(xi[nu]);
  }
  return total;
}

PolyForm dbar(const PolyFunction& u) {
  PolyForm f(u.dim());
  for (int nu = 1; nu <= u.dim(); ++nu) f.comp(nu) = u.dzbar(nu);
  return f;
}

bool is_closed(const PolyForm& f) {
  for (int nu = 1; nu <= f.dim(); ++nu) {
    for (int mu = nu + 1; mu <= f.dim(); ++mu) {
      if (!(f.comp(nu).dzbar(mu) == f.comp(mu).dzbar(nu))) return false;
    }
  }
  return true;
}

PolyFunction particular_solution(const PolyForm& f) {
  if (!is_closed(f)) throw std::invalid_argument("particular_solution: form is not dbar-closed");
  PolyFunction u(f.dim());
  PolyForm rest = f;
  for (int nu = f.dim(); nu >= 1; --nu) {
    if (rest.comp(nu).is_zero()) continue;
    const PolyFunction piece = rest.comp(nu).antideriv_zbar(nu);
    u += piece;
    rest -= dbar(piece);
    if (!rest.comp(nu).is_zero()) throw std::logic_error("particular_solution: component did not cancel");
  }
  if (!rest.is_zero()) throw std::logic_error("particular_solution: nonzero remainder");
  return u;
}

}  // namespace dbar
