#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "dbar/bootstrap.hpp"
#include "dbar/sampling.hpp"

using namespace dbar;
using cplx = std::complex<double>;

namespace {

PolyFunction zb(int dim, int nu, int e = 1) { return PolyFunction::monomial(dim, {}, MultiIndex::unit(nu, e)); }

PolyForm dzbar(int dim, int nu) {
  PolyForm f(dim);
  f.comp(nu) = PolyFunction::constant(dim, 1);
  return f;
}

BootstrapOptions quick() {
  BootstrapOptions o;
  o.grid = 24;
  o.seminorm_samples = 100;
  return o;
}

}  // namespace

TEST_CASE("central projection") {
  const ProjectionRecord p0 = central_projection(1.0, 0.0, 2);
  const cplx a[] = {{0.3, 0.1}, {0.0, 0.0}};
  CHECK(std::abs(p0.project(a)[0] - a[0]) < 1e-15);

  const ProjectionRecord p = central_projection(1.0, 0.5, 2);
  const cplx b[] = {{0.2, 0.0}, {0.5, 0.0}};
  CHECK(std::abs(p.project(b)[0] - 0.2) < 1e-15);
  const cplx c[] = {{0.2, 0.1}, {0.3, -0.1}};
  const cplx expect = c[0] * 0.5 / (1.0 - c[1]);
  CHECK(std::abs(p.project(c)[0] - expect) < 1e-15);

  for (const auto& zp : sample_l1_ball(1, 0.4, 10, 1)) {
    const auto back = p.project(p.embed(zp));
    CHECK(std::abs(back[0] - zp[0]) < 1e-15);
  }
  CHECK(p.left_inverse_exact());
  CHECK(p.image_radius(0.5) == doctest::Approx(0.25));
  CHECK_THROWS_AS(central_projection(1.0, 1.0, 2), std::domain_error);
  CHECK_THROWS_AS(central_projection(1.0, -0.1, 2), std::domain_error);
  CHECK_THROWS_AS(central_projection(1.0, 0.1, 1), std::invalid_argument);
}

TEST_CASE("slice form") {
  PolyForm f(2);
  f.comp(1) = zb(2, 2) * zb(2, 1);
  f.comp(2) = zb(2, 1);
  const PolyForm s = slice_form(f, mpq_class(1, 2));
  CHECK(s.dim() == 1);
  CHECK(s.comp(1) == zb(1, 1).scaled(QComplex(mpq_class(1, 2))));
}

TEST_CASE("correction form vanishes on the slice") {
  const ProjectionRecord p = central_projection(1.0, 0.25, 2);
  PolyForm f(2);
  f.comp(1) = zb(2, 2) + PolyFunction::constant(2, 1);
  f.comp(2) = zb(2, 1);
  const CorrectionForm cf = correction_form(f, p);
  CHECK(cf.slice_zero);
  for (const auto& zp : sample_l1_ball(1, 0.5, 10, 1)) {
    const cplx z[] = {zp[0], 0.25};
    CHECK(std::abs(cf.F.eval(z)[0]) < 1e-14);
  }
}

TEST_CASE("correction form of dz̄_N with Z = 0") {
  const ProjectionRecord p = central_projection(1.0, 0.0, 2);
  const CorrectionForm cf = correction_form(dzbar(2, 2), p);
  CHECK(cf.slice_zero);
  CHECK(cf.F.comp(1).is_zero());
  for (const auto& z : sample_l1_ball(2, 0.5, 10, 2)) {
    for (auto v : g_value(cf, z, 0.0)) CHECK(std::abs(v) < 1e-14);
  }
}

TEST_CASE("correction form of z̄_N dz̄_N with Z = 0 has |g| = 1") {
  const ProjectionRecord p = central_projection(1.0, 0.0, 2);
  PolyForm f(2);
  f.comp(2) = zb(2, 2);
  const CorrectionForm cf = correction_form(f, p);
  for (const auto& z : sample_l1_ball(2, 0.5, 20, 3)) {
    if (std::abs(z[1]) < 1e-3) continue;
    const auto g = g_value(cf, z, 0.0);
    CHECK(std::abs(g[0]) < 1e-14);
    CHECK(std::abs(g[1]) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("one-variable bootstrap is Pompeiu plus normalisation") {
  const double Z[] = {0.0};
  const BootstrapResult r = bootstrap_solve(dzbar(1, 1), Z, 1.0, 0.5, quick());
  REQUIRE(r.levels.size() == 1);
  CHECK(r.levels[0].report.residual_sup < 1e-3);
  CHECK(std::abs(r.U_at_Z) < 1e-12);
  for (const auto& z : sample_l1_ball(1, 0.45, 10, 4)) CHECK(std::abs(r.U(z) - std::conj(z[0])) < 1e-3);
}

TEST_CASE("two-variable bootstrap of dz̄₂ at Z = 0 reproduces conj(z₂)") {
  const double Z[] = {0.0, 0.0};
  const BootstrapResult r = bootstrap_solve(dzbar(2, 2), Z, 1.0, 0.5, quick());
  REQUIRE(r.levels.size() == 2);
  CHECK(r.levels[0].report.residual_sup < 1e-3);
  CHECK(std::abs(r.U_at_Z) < 1e-4);
  for (const auto& z : sample_l1_ball(2, 0.45, 10, 5)) CHECK(std::abs(r.U(z) - std::conj(z[1])) < 1e-3);
}

TEST_CASE("zero data gives a zero chain") {
  const double Z[] = {0.1, 0.1};
  const BootstrapResult r = bootstrap_solve(PolyForm(2), Z, 1.0, 0.5, quick());
  CHECK(r.all_pass());
  for (const auto& z : sample_l1_ball(2, 0.45, 10, 6)) CHECK(std::abs(r.U(z)) < 1e-14);
}

TEST_CASE("bootstrap preconditions") {
  const double Z2[] = {0.3, 0.3};
  CHECK_THROWS(bootstrap_solve(dzbar(2, 1), Z2, 1.0, 0.5, quick()));
  const double Z3[] = {0.0, 0.0, 0.0};
  CHECK_THROWS(bootstrap_solve(dzbar(3, 1), Z3, 1.0, 0.5, quick()));
  const double Zneg[] = {-0.1, 0.0};
  CHECK_THROWS(bootstrap_solve(dzbar(2, 1), Zneg, 1.0, 0.5, quick()));
  const double Z0[] = {0.0, 0.0};
  CHECK_THROWS(bootstrap_solve(dzbar(2, 1), Z0, 0.5, 0.5, quick()));
}
