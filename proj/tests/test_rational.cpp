#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>

#include "dbar/bootstrap.hpp"
#include "dbar/rational.hpp"
#include "dbar/sampling.hpp"

using namespace dbar;
using cplx = std::complex<double>;

namespace {

PolyFunction zb(int dim, int nu, int e = 1) { return PolyFunction::monomial(dim, {}, MultiIndex::unit(nu, e)); }
PolyFunction z(int dim, int nu, int e = 1) { return PolyFunction::monomial(dim, MultiIndex::unit(nu, e), {}); }

// (σ*f)(z; ξ) = f(σ(z); dσ(z)ξ) with dσ(z)ξ by a centered real difference.
cplx pullback_fd(const HolomorphicMap& s, const PolyForm& f, const std::vector<cplx>& p, const std::vector<cplx>& xi) {
  const double h = 1e-6;
  std::vector<cplx> a = p;
  std::vector<cplx> b = p;
  for (std::size_t i = 0; i < p.size(); ++i) {
    a[i] += h * xi[i];
    b[i] -= h * xi[i];
  }
  const auto sa = s.eval(a);
  const auto sb = s.eval(b);
  std::vector<cplx> v(sa.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (sa[i] - sb[i]) / (2.0 * h);
  return f.apply(s.eval(p), v);
}

cplx apply(const RationalForm& g, const std::vector<cplx>& p, const std::vector<cplx>& xi) {
  const auto c = g.eval(p);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) acc += c[i] * std::conj(xi[i]);
  return acc;
}

PolyForm sample_form() {
  PolyForm f(2);
  f.comp(1) = zb(2, 2) * z(2, 1) + PolyFunction::constant(2, QComplex(1, 2));
  f.comp(2) = zb(2, 1) * z(2, 1) + zb(2, 2, 2);
  return f;
}

}  // namespace

TEST_CASE("rational arithmetic") {
  const DenomShape sh{2, 1};
  const RationalFunction a(z(2, 1), sh, 1, 0);
  const RationalFunction b(zb(2, 1), sh, 0, 2);
  const std::vector<cplx> p{{0.2, 0.1}, {0.3, -0.2}};
  const cplx d = 1.0 - p[1];
  const cplx db = 1.0 - std::conj(p[1]);
  CHECK(std::abs((a + b).eval(p) - (p[0] / d + std::conj(p[0]) / (db * db))) < 1e-14);
  CHECK(std::abs((a * b).eval(p) - p[0] * std::conj(p[0]) / (d * db * db)) < 1e-14);
  CHECK(std::abs(a.raised(3, 1).eval(p) - a.eval(p)) < 1e-14);
  // ∂/∂z₂ of z₁/(1 − z₂) is z₁/(1 − z₂)².
  CHECK(std::abs(a.dz(2).eval(p) - p[0] / (d * d)) < 1e-14);
  CHECK(a.dzbar(2).is_zero());
  CHECK(std::abs(a.conj().eval(p) - std::conj(a.eval(p))) < 1e-14);
  CHECK(std::abs(FastRational(a * b)(p) - (a * b).eval(p)) < 1e-14);
}

TEST_CASE("identity pullback leaves the form unchanged") {
  const PolyForm f = sample_form();
  const RationalForm g = pullback(identity_map(2), f);
  for (const auto& p : sample_l1_ball(2, 0.9, 10, 1)) {
    const auto a = g.eval(p);
    const auto b = f.eval(p);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-14);
  }
}

TEST_CASE("scaling pullback picks up conj(c)") {
  const PolyForm f = sample_form();
  const QComplex c(mpq_class(1, 2), mpq_class(1, 3));
  const cplx cd = c.to_cplx();
  const RationalForm g = pullback(scaling_map(2, c), f);
  for (const auto& p : sample_l1_ball(2, 0.9, 10, 2)) {
    const std::vector<cplx> cp{cd * p[0], cd * p[1]};
    const auto a = g.eval(p);
    const auto b = f.eval(cp);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(a[i] - std::conj(cd) * b[i]) < 1e-14);
  }
}

TEST_CASE("projection pullback against finite differences") {
  const ProjectionRecord proj = central_projection(1.0, 0.25, 2);
  PolyForm f(1);
  f.comp(1) = PolyFunction::constant(1, 1);
  const RationalForm g = pullback(proj.pi, f);
  std::mt19937_64 rng(3);
  const auto pts = sample_l1_ball(2, 0.8, 10, 3);
  for (const auto& p : pts) {
    const auto xi = sample_l1_sphere(2, 1.0, rng);
    CHECK(std::abs(apply(g, p, xi) - pullback_fd(proj.pi, f, p, xi)) < 1e-8);
    // Closed form of the dz̄₁ coefficient: (R − Z_N)·conj(1/(R − z_N)).
    CHECK(std::abs(g.eval(p)[0] - 0.75 * std::conj(1.0 / (1.0 - p[1]))) < 1e-14);
  }
  const PolyForm h = sample_form().restricted(1);
  const RationalForm gh = pullback(proj.pi, h);
  for (const auto& p : pts) {
    const auto xi = sample_l1_sphere(2, 1.0, rng);
    CHECK(std::abs(apply(gh, p, xi) - pullback_fd(proj.pi, h, p, xi)) < 1e-8);
  }
}

TEST_CASE("maps must be holomorphic") {
  HolomorphicMap bad = identity_map(2);
  bad.coords[0] = RationalFunction(zb(2, 1));
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(pullback(bad, sample_form()), std::invalid_argument);
}

TEST_CASE("composition") {
  const ProjectionRecord proj = central_projection(1.0, 0.5, 2);
  const PolyFunction u = z(1, 1, 2) + zb(1, 1);
  const RationalFunction c = compose(u, proj.pi);
  for (const auto& p : sample_l1_ball(2, 0.9, 10, 4)) {
    const cplx w = proj.pi.eval(p)[0];
    CHECK(std::abs(c.eval(p) - (w * w + std::conj(w))) < 1e-13);
  }
}
