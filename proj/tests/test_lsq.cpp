#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "dbar/lsq.hpp"
#include "dbar/poly.hpp"

using namespace dbar;
using cplx = std::complex<double>;

namespace {

std::vector<std::vector<cplx>> sample_form(const BallGrid& g, const PolyForm& f) {
  std::vector<std::vector<cplx>> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = f.eval(g.point(i));
  return out;
}

bool monotone(const std::vector<double>& h) {
  for (std::size_t i = 1; i < h.size(); ++i) {
    if (h[i] > h[i - 1] * (1.0 + 1e-12)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("grid geometry") {
  const BallGrid g(1, 21, 1.0, 0.9);
  CHECK(g.spacing() == doctest::Approx(0.1));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto p = g.point(i);
    CHECK(std::abs(p[0]) < 0.9);
  }
  CHECK_THROWS(BallGrid(0, 10, 1.0, 1.0));
}

TEST_CASE("centered differences are exact on quadratics") {
  const BallGrid g(2, 9, 0.5, 0.5);
  std::vector<cplx> u(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto p = g.point(i);
    u[i] = std::conj(p[0]) * std::conj(p[1]) + p[0] * p[0];
  }
  const auto d = grid_dbar(g, u);
  int with_stencil = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g.has_stencil(i)) {
      CHECK(d[i].empty());
      continue;
    }
    ++with_stencil;
    const auto p = g.point(i);
    CHECK(std::abs(d[i][0] - std::conj(p[1])) < 1e-13);
    CHECK(std::abs(d[i][1] - std::conj(p[0])) < 1e-13);
  }
  CHECK(with_stencil > 0);
}

TEST_CASE("interpolation reproduces linear data") {
  const BallGrid g(1, 17, 1.0, 1.0);
  std::vector<cplx> u(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) u[i] = 2.0 * g.point(i)[0] + cplx(1, -1);
  const cplx z[] = {{0.13, -0.21}};
  CHECK(std::abs(grid_interpolate(g, u, z) - (2.0 * z[0] + cplx(1, -1))) < 1e-13);
  const cplx far[] = {{3.0, 0.0}};
  CHECK_THROWS_AS(grid_interpolate(g, u, far), std::domain_error);
}

TEST_CASE("zero data: zero solution, no iterations") {
  const BallGrid g(1, 11, 1.0, 1.0);
  const auto r = lsq_dbar_solve(g, sample_form(g, PolyForm(1)), 1e-10);
  CHECK(r.report.residual_sup == 0.0);
  for (auto v : r.u) CHECK(v == cplx{});
}

TEST_CASE("one variable, f = 1") {
  const BallGrid g(1, 33, 1.0, 1.0);
  PolyForm f(1);
  f.comp(1) = PolyFunction::constant(1, 1);
  const auto r = lsq_dbar_solve(g, sample_form(g, f), 1e-9);
  CHECK(r.report.residual_sup < 1e-6);
  CHECK(monotone(r.report.residual_history));
  std::vector<cplx> hol(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) hol[i] = r.u[i] - std::conj(g.point(i)[0]);
  double worst = 0.0;
  const auto d = grid_dbar(g, hol);
  for (const auto& v : d) {
    if (!v.empty()) worst = std::max(worst, std::abs(v[0]));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("two variables, f = dbar(conj(z1) conj(z2))") {
  const BallGrid g(2, 14, 0.75, 0.75);
  const PolyForm f = dbar::dbar(PolyFunction::monomial(2, {}, MultiIndex{{1, 1}, {2, 1}}));
  const auto r = lsq_dbar_solve(g, sample_form(g, f), 1e-8);
  CHECK(r.report.residual_sup < 1e-5);
  CHECK(monotone(r.report.residual_history));
}
