#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>

#include "dbar/canonical.hpp"
#include "dbar/io.hpp"
#include "dbar/sampling.hpp"

using namespace dbar;
using cplx = std::complex<double>;

namespace {

PolyFunction zb(int dim, int nu, int e = 1) { return PolyFunction::monomial(dim, {}, MultiIndex::unit(nu, e)); }
PolyFunction z(int dim, int nu, int e = 1) { return PolyFunction::monomial(dim, MultiIndex::unit(nu, e), {}); }

PolyFunction sum(const std::map<SignedIndex, PolyFunction>& comps, int dim) {
  PolyFunction u(dim);
  for (const auto& [k, uk] : comps) u += uk;
  return u;
}

PolyForm d1(int dim) {
  PolyForm f(dim);
  f.comp(1) = PolyFunction::constant(dim, 1);
  return f;
}

PolyFunction random_poly(std::mt19937_64& rng, int dim) {
  std::uniform_int_distribution<int> ex(0, 2);
  std::uniform_int_distribution<int> num(-4, 4);
  PolyFunction u(dim);
  for (int t = 0; t < 6; ++t) {
    std::vector<std::pair<int, int>> a;
    std::vector<std::pair<int, int>> b;
    for (int nu = 1; nu <= dim; ++nu) {
      a.push_back({nu, ex(rng)});
      b.push_back({nu, ex(rng)});
    }
    u.add(MultiIndex::from_pairs(a), MultiIndex::from_pairs(b), QComplex(mpq_class(num(rng), 3), mpq_class(num(rng), 2)));
  }
  return u;
}

}  // namespace

TEST_CASE("nodes") {
  const auto Z = node(MultiIndex{{1, 2}, {2, 1}}, mpq_class(3, 4), 3);
  CHECK(Z[0] == QComplex(mpq_class(1, 2)));
  CHECK(Z[1] == QComplex(mpq_class(1, 4)));
  CHECK(Z[2].is_zero());
  for (const auto& c : node(MultiIndex{}, mpq_class(1), 2)) CHECK(c.is_zero());
  CHECK_THROWS_AS(node(MultiIndex{{3, 1}}, mpq_class(1), 2), std::invalid_argument);
}

TEST_CASE("canonical components examples") {
  CHECK(canonical_components(PolyForm(2), 0.5).empty());
  const auto c = canonical_components(d1(1), 0.5);
  CHECK(sum(c, 1) == zb(1, 1));
  // A holomorphic pollutant of degree (1:1) is removed by the node correction.
  const auto polluted = normalize_components(zb(1, 1) + z(1, 1), 0.5);
  CHECK(sum(polluted, 1) == zb(1, 1));
  CHECK_THROWS_AS(canonical_components(dbar::dbar(zb(2, 1)) + [] {
                    PolyForm f(2);
                    f.comp(1) = zb(2, 2);
                    return f;
                  }(), 0.5),
                  std::invalid_argument);
}

TEST_CASE("canonical solution does not depend on the base solution") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    const int dim = 1 + t % 3;
    const PolyFunction U = random_poly(rng, dim);
    PolyFunction hol(dim);
    const PolyFunction src = random_poly(rng, dim);
    for (const auto& [bi, cf] : src.terms()) hol.add(bi.alpha, {}, cf);
    CHECK(sum(normalize_components(U, 0.6), dim) == sum(normalize_components(U + hol, 0.6), dim));
  }
}

TEST_CASE("normalized components vanish at their nodes numerically") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10; ++t) {
    const int dim = 2 + t % 2;
    const double r = 0.7;
    for (const auto& [k, uk] : normalize_components(random_poly(rng, dim), r)) {
      if (!k.is_nonnegative()) continue;
      std::vector<cplx> Z(dim);
      const MultiIndex m = k.to_multi();
      for (const auto& e : m.entries()) Z[e.coord - 1] = r * e.exp / m.order();
      CHECK(std::abs(uk.eval(Z)) < 1e-12);
    }
  }
}

TEST_CASE("canonical solve") {
  const CanonicalSolution s = canonical_solve(d1(1), 0.5, 100);
  CHECK(s.u == zb(1, 1));
  CHECK(s.report.all_pass());
  CHECK(s.report.residual_sup == 0.0);

  PolyForm f(2);
  f.comp(1) = zb(2, 2);
  f.comp(2) = zb(2, 1);
  const CanonicalSolution t = canonical_solve(f, 0.5, 100);
  CHECK(dbar::dbar(t.u) == f);
  CHECK(t.report.all_pass());

  const CanonicalSolution zero = canonical_solve(PolyForm(2), 0.5, 3);
  CHECK(zero.u.is_zero());
  CHECK(zero.u_mean.is_zero());
  CHECK_THROWS_AS(canonical_solve(f, 0.5, 0), std::invalid_argument);
}

TEST_CASE("Cesàro assembly uses exact weights") {
  // u = z̄₁ + z₁²z̄₂: components k = (−1, 0) and (2, −1).
  const PolyFunction u = zb(2, 1) + z(2, 1, 2) * zb(2, 2);
  const auto comps = u.bidegree_split();
  const PolyFunction m = cesaro_assemble(comps, 2, 4);
  CHECK(m == zb(2, 1).scaled(QComplex(mpq_class(3, 4))) + (z(2, 1, 2) * zb(2, 2)).scaled(QComplex(mpq_class(3, 8))));
  CHECK(cesaro_assemble(comps, 2, 2) == zb(2, 1).scaled(QComplex(mpq_class(1, 2))));
}

TEST_CASE("canonical solution stays near the base solution") {
  const Lemma51Result zero = lemma51_check(PolyForm(2), 0.5, 2, 0.0, 0.0);
  CHECK(zero.check.pass);
  CHECK(zero.check.lhs == 0.0);

  const Lemma51Result one = lemma51_check(d1(1), 0.5, 1, 1.0, 1.0);
  CHECK(one.check.pass);
  CHECK(one.check.lhs == 0.0);

  // z₁²z̄₁ has character k = (1), so the node correction changes it.
  const PolyForm f = dbar::dbar(z(2, 1, 2) * zb(2, 1));
  const Lemma51Constants c = lemma51_constants(f, 0.5, 2);
  const Lemma51Result r = lemma51_check(f, 0.5, 2, c.A, c.Q);
  CHECK(r.check.pass);
  CHECK(r.check.lhs > 0.0);
  CHECK(r.samples == 100);
  CHECK_THROWS_AS(lemma51_check(f, 0.5, 3, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("restriction consistency") {
  PolyForm f1(2);
  f1.comp(1) = zb(2, 1);
  PolyForm f2 = f1;
  f2.comp(2) = zb(2, 2);
  CHECK(restriction_consistency(f1, f1, 2, 0.5));
  CHECK(restriction_consistency(f1, f2, 1, 0.5));
  PolyForm g(2);
  g.comp(2) = zb(2, 2);
  CHECK(restriction_consistency(PolyForm(2), g, 1, 0.5));
  CHECK_THROWS_AS(restriction_consistency(f1, g, 1, 0.5), std::invalid_argument);
}

TEST_CASE("truncation tower") {
  PolyForm f(3);
  for (int nu = 1; nu <= 3; ++nu) f.comp(nu) = zb(3, nu);
  const TowerReport t = truncation_tower(f, 1.0, 0.5, {1, 2, 3});
  CHECK(t.stable);
  CHECK(t.all_pass());
  REQUIRE(t.levels.size() == 3);
  CHECK(t.levels[2].u.restricted(1) == t.levels[0].u);

  const TowerReport first = truncation_tower(d1(3), 1.0, 0.5, {1, 2, 3});
  CHECK(first.stable);
  for (const auto& l : first.levels) CHECK(l.u == zb(l.N, 1));

  const TowerReport zero = truncation_tower(PolyForm(3), 1.0, 0.5, {1, 2, 3});
  for (const auto& l : zero.levels) CHECK(l.u.is_zero());
  CHECK_THROWS_AS(truncation_tower(f, 1.0, 0.5, {2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(truncation_tower(f, 1.0, 1.5, {1}), std::invalid_argument);
}

TEST_CASE("corpus files are closed and consistent") {
  const auto c2 = load_forms(std::string(DBAR_DATA_DIR) + "/corpus_c2.json");
  const auto c3 = load_forms(std::string(DBAR_DATA_DIR) + "/corpus_c3.json");
  REQUIRE(c2.size() == 10);
  REQUIRE(c3.size() == 10);
  for (std::size_t i = 0; i < c2.size(); ++i) {
    CHECK(is_closed(c2[i]));
    CHECK(is_closed(c3[i]));
    CHECK(c2[i].degree() <= 4);
    CHECK(c3[i].restricted(2) == c2[i]);
  }
}

TEST_CASE("sup constant probe") {
  PolyForm f(3);
  for (int nu = 1; nu <= 3; ++nu) f.comp(nu) = zb(3, nu);
  const auto rows = sup_constant_fit({f}, 1.0, 0.5, {1, 2, 3}, 100);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.forms_used == 1);
    CHECK(r.C > 0.0);
    CHECK(r.sup_u <= 0.5);
  }
}
