#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "dbar/monomial.hpp"

using namespace dbar;
using cplx = std::complex<double>;

namespace {

MonomialSeries series(std::initializer_list<std::pair<MultiIndex, cplx>> terms, double radius = 1.0) {
  MonomialSeries h;
  h.radius = radius;
  for (const auto& [k, a] : terms) h.coeffs[k] = a;
  h.stored_grade = std::max(0, h.max_grade());
  return h;
}

// |a| r^n k^k/n^n by direct multiplication.
double weight(const MultiIndex& k, cplx a, double r) {
  const int n = k.order();
  double w = std::abs(a) * std::pow(r, n);
  for (const auto& e : k.entries()) w *= std::pow(static_cast<double>(e.exp) / n, e.exp);
  return w;
}

}  // namespace

TEST_CASE("evaluation") {
  const MonomialSeries one = series({{MultiIndex{}, 1.0}});
  CHECK(eval(one, Point{{1, 0.3}, {4, -0.2}}).value == cplx(1.0));
  CHECK(eval(one, Point{{1, 0.3}}).tail == 0.0);

  const MonomialSeries h = series({{MultiIndex{{1, 1}, {2, 1}}, 2.0}});
  CHECK(std::abs(eval(h, Point{{1, 0.1}, {2, 0.2}}).value - 0.04) < 1e-16);
  CHECK_THROWS_AS(eval(h, Point{{1, 0.6}, {2, 0.5}}), std::domain_error);
}

TEST_CASE("truncated geometric series with a tail bound") {
  const double R = 2.0;
  MonomialSeries h;
  h.radius = R;
  h.provenance = Provenance::extracted;
  for (int j = 0; j <= 30; ++j) h.coeffs[MultiIndex::unit(1, j)] = std::pow(R, -j);
  h.coeffs.erase(MultiIndex::unit(1, 0));
  h.coeffs[MultiIndex{}] = 1.0;
  h.stored_grade = 30;
  CHECK(std::isinf(eval(h, Point{{1, 1.5}}).tail));
  h.tail_bound = 1.0;
  for (double x : {0.2, 1.0, 1.5, 1.9}) {
    const SeriesValue v = eval(h, Point{{1, x}});
    const double exact = 1.0 / (1.0 - x / R);
    CHECK(std::abs(v.value - exact) <= v.tail * (1.0 + 1e-9) + 1e-15);
  }
}

TEST_CASE("bracket norm examples") {
  for (double r : {0.1, 0.5, 1.0}) CHECK(bracket_norm(series({{MultiIndex{{1, 1}}, 1.0}}), r) == doctest::Approx(r));
  CHECK(bracket_norm(series({{MultiIndex{{1, 1}, {2, 1}}, 1.0}}), 1.0) == doctest::Approx(0.25));
  CHECK(bracket_norm(MonomialSeries{}, 1.0) == 0.0);
  CHECK(coeff_bound(series({{MultiIndex{}, 5.0}}), 3.0) == doctest::Approx(5.0));
}

TEST_CASE("bracket norm matches direct weights") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const auto pool = indices_up_to(3, 7);
  for (int t = 0; t < 30; ++t) {
    MonomialSeries h;
    double expect = 0.0;
    const double r = 0.1 + 0.03 * t;
    for (int i = 0; i < 10; ++i) {
      const auto& k = pool[rng() % pool.size()];
      const cplx a(u(rng), u(rng));
      h.coeffs[k] = a;
    }
    for (const auto& [k, a] : h.coeffs) expect = std::max(expect, weight(k, a, r));
    CHECK(bracket_norm(h, r) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("extraction") {
  const auto prod = [](std::span<const cplx> z) { return z[0] * z[1]; };
  const MonomialSeries h = extract(prod, 2, 1.0, 4);
  REQUIRE(h.coeffs.count(MultiIndex{{1, 1}, {2, 1}}) == 1);
  for (const auto& [k, a] : h.coeffs) {
    if (k == MultiIndex{{1, 1}, {2, 1}}) CHECK(std::abs(a - 1.0) < 1e-12);
    else CHECK(std::abs(a) <= 1e-12);
  }

  const double Rp = 1.7;
  const auto geo = [Rp](std::span<const cplx> z) { return 1.0 / (1.0 - z[0] / Rp); };
  const MonomialSeries g = extract(geo, 1, 1.0, 8);
  for (int j = 0; j <= 8; ++j) {
    const MultiIndex k = MultiIndex::unit(1, j);
    REQUIRE(g.coeffs.count(k) == 1);
    CHECK(std::abs(g.coeffs.at(k) - std::pow(Rp, -j)) < 1e-10);
  }

  CHECK(extract([](std::span<const cplx>) { return cplx{}; }, 3, 1.0, 5).coeffs.empty());
  CHECK_THROWS_AS(extract(prod, 2, 1.0, 6, 6), std::invalid_argument);

  const auto rho = extraction_radii(3, 1.0);
  CHECK(rho == std::vector<double>{0.25, 0.125, 0.0625});
}

TEST_CASE("extraction recovers explicit series") {
  MonomialSeries h = series({{MultiIndex{{1, 2}}, cplx(1, 1)}, {MultiIndex{{2, 1}, {3, 3}}, -0.5}, {MultiIndex{}, 2.0}}, 4.0);
  const MonomialSeries back = extract([&h](std::span<const cplx> z) { return eval(h, Point::from_dense(z)).value; }, 3,
                                      4.0, 6);
  const MonomialSeries diff = back - h;
  CHECK(bracket_norm(diff, 1.0) < 1e-10);
}

TEST_CASE("entire split") {
  const MonomialSeries h = series({{MultiIndex{{1, 1}}, 1.0}, {MultiIndex{{2, 2}}, 0.01}});
  const EntireSplit sp = entire_split(h, 0.5, 0.05 * 0.5);
  CHECK(sp.kept == std::set<MultiIndex>{MultiIndex{{1, 1}}});

  const EntireSplit ex = entire_split(series({{MultiIndex{{1, 1}}, 1.0}, {MultiIndex{{2, 2}}, 0.01}}, 2.0), 1.0, 0.05);
  CHECK(ex.kept == std::set<MultiIndex>{MultiIndex{{1, 1}}});
  CHECK(ex.remainder_norm == doctest::Approx(0.01));
  CHECK(bracket_norm(h - ex.psi, 1.0) <= 0.05);

  const EntireSplit none = entire_split(h, 0.5, 10.0);
  CHECK(none.psi.coeffs.empty());
  const EntireSplit all = entire_split(h, 0.5, 1e-300);
  CHECK(all.psi.coeffs == h.coeffs);
  CHECK(all.remainder_norm == 0.0);

  CHECK_THROWS_AS(entire_split(h, 1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(entire_split(h, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("entire split remainder is bounded by epsilon") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> mag(-6.0, 2.0);
  const auto pool = indices_up_to(3, 6);
  for (int t = 0; t < 50; ++t) {
    MonomialSeries h;
    for (int i = 0; i < 20; ++i) h.coeffs[pool[rng() % pool.size()]] = std::exp(mag(rng));
    const double r = 0.3 + 0.01 * t;
    const double eps = std::exp(mag(rng)) * 0.1;
    const EntireSplit sp = entire_split(h, r, eps);
    CHECK(bracket_norm(h - sp.psi, r) <= eps);
    for (const auto& k : sp.kept) CHECK(weight(k, h.coeffs.at(k), r) >= eps * (1.0 - 1e-12));
  }
}
