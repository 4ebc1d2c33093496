#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "dbar/delta.hpp"
#include "dbar/multiindex.hpp"
#include "dbar/sampling.hpp"

using namespace dbar;

namespace {

// Brute-force Σ_{‖k‖ ≤ cap} (‖k‖^‖k‖/k^k) |q|^{#k} |z^k| over every index.
double brute_partial(double aq, const std::vector<double>& x, int cap) {
  double acc = 0.0;
  for (const auto& k : indices_up_to(static_cast<int>(x.size()), cap)) {
    double t = std::exp(k.log_coeff()) * std::pow(aq, k.support_size());
    for (const auto& e : k.entries()) t *= std::pow(x[e.coord - 1], e.exp);
    acc += t;
  }
  return acc;
}

std::vector<double> random_moduli(std::mt19937_64& rng, int dim, double norm) {
  std::vector<double> x(dim);
  double s = 0.0;
  for (auto& v : x) s += (v = std::uniform_real_distribution<double>(0.1, 1.0)(rng));
  for (auto& v : x) v *= norm / s;
  return x;
}

Point as_point(const std::vector<double>& x) {
  std::vector<std::complex<double>> d(x.begin(), x.end());
  return Point::from_dense(d);
}

}  // namespace

TEST_CASE("partial sum trivial cases") {
  CHECK(delta_partial(3.0, Point{}, 10) == 1.0);
  CHECK(delta_partial(0.0, Point{{1, 0.4}, {2, 0.3}}, 10) == 1.0);
  for (int cap : {0, 1, 5, 30}) {
    CHECK(delta_partial(1.0, Point{{1, 0.5}}, cap) == doctest::Approx(2.0 - std::pow(0.5, cap)).epsilon(1e-14));
  }
}

TEST_CASE("partial sum matches brute force") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 12; ++t) {
    const int dim = 1 + t % 3;
    const auto x = random_moduli(rng, dim, 0.2 + 0.05 * t);
    const double aq = 0.5 + 0.25 * (t % 5);
    const double brute = brute_partial(aq, x, 9);
    CHECK(delta_partial(aq, as_point(x), 9) == doctest::Approx(brute).epsilon(1e-12));
    const auto terms = delta_grade_terms(aq, x, 9);
    REQUIRE(terms.size() == 10);
    CHECK(static_cast<double>(terms[0]) == 1.0);
  }
}

TEST_CASE("grade terms match brute force per grade") {
  const std::vector<double> x{0.2, 0.15, 0.1};
  const auto terms = delta_grade_terms(1.5, x, 6);
  for (int g = 0; g <= 6; ++g) {
    double brute = 0.0;
    for (const auto& k : indices_of_order(3, g)) {
      double t = std::exp(k.log_coeff()) * std::pow(1.5, k.support_size());
      for (const auto& e : k.entries()) t *= std::pow(x[e.coord - 1], e.exp);
      brute += t;
    }
    CHECK(static_cast<double>(terms[g]) == doctest::Approx(brute).epsilon(1e-13));
  }
}

TEST_CASE("single-variable enclosure brackets the geometric sum") {
  for (int i = 1; i <= 9; ++i) {
    const double x = i / 10.0;
    for (int cap : {10, 50, 200}) {
      const auto e = delta_enclose(1.0, Point{{1, x}}, cap);
      CHECK(e.lower <= 1.0 / (1.0 - x));
      CHECK(e.best_upper() >= 1.0 / (1.0 - x));
    }
  }
  const auto e = delta_enclose(1.0, Point{{1, 0.5}}, 60);
  CHECK(e.lower <= 2.0);
  CHECK(e.best_upper() >= 2.0);
  CHECK(e.width() < 1e-9);
}

TEST_CASE("enclosure brackets a much longer partial sum") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const int dim = 2 + t % 4;
    const auto x = random_moduli(rng, dim, 0.1 + 0.06 * t);
    const double q = t % 2 ? 1.0 : 1.7;
    for (int cap : {8, 16, 32}) {
      const auto e = delta_enclose(q, as_point(x), cap);
      const double longer = delta_partial(q, as_point(x), 3 * cap);
      CHECK(e.lower <= longer);
      CHECK(e.best_upper() >= longer * (1.0 - 1e-12));
      CHECK(e.upper >= e.best_upper());
      CHECK(e.upper_counting >= e.best_upper());
    }
  }
}

TEST_CASE("widths shrink for a spread-out point") {
  std::vector<double> x(50, 0.3 / 50);
  double prev = HUGE_VAL;
  for (int cap : {8, 16, 32, 64, 128}) {
    const auto e = delta_enclose(1.0, as_point(x), cap);
    CHECK(std::isfinite(e.best_upper()));
    CHECK(e.width() < prev);
    prev = e.width();
    CHECK(e.lower <= delta_partial(1.0, as_point(x), 3 * cap));
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("zero point encloses exactly one") {
  const auto e = delta_enclose(2.0, Point{}, 20);
  CHECK(e.lower == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(e.best_upper() == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(e.lower <= 1.0);
  CHECK(e.best_upper() >= 1.0);
}

TEST_CASE("adaptive width and upper tolerance") {
  for (double x : {0.1, 0.37, 0.8, 0.95}) {
    const auto e = delta_enclose_to_width(1.0, Point{{1, x}}, 1e-10);
    CHECK(e.width() <= 1e-10);
    const double up = delta_upper(1.0, Point{{1, x}}, 1e-9);
    CHECK(up >= 1.0 / (1.0 - x));
    CHECK(up <= (1.0 / (1.0 - x)) * (1.0 + 2e-9));
  }
  CHECK_THROWS_AS(delta_enclose_to_width(1.0, Point{{1, 0.999999}}, 1e-14, 50), std::domain_error);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(delta_partial(1.0, Point{{1, 0.6}, {2, 0.4}}, 5), std::domain_error);
  CHECK_THROWS_AS(delta_enclose(1.0, Point{{1, 1.2}}, 5), std::domain_error);
  CHECK_THROWS_AS(delta_enclose(1.0, Point{{1, 0.2}}, -1), std::invalid_argument);
}

TEST_CASE("minimal s_eta is the least threshold") {
  // (eη)^s s! ≤ s^s in logs: s(1 + ln η) + lgamma(s+1) ≤ s ln s.
  const auto holds = [](double eta, int s) {
    return s * (1.0 + std::log(eta)) + std::lgamma(s + 1.0) <= s * std::log(static_cast<double>(s)) + 1e-12;
  };
  for (double eta : {0.3, 0.5, 0.669, 0.79, 0.9, 0.97}) {
    const int s = minimal_s_eta(eta);
    CHECK(s >= 1);
    for (int t = s; t < s + 2000; ++t) CHECK(holds(eta, t));
    if (s > 1) CHECK_FALSE(holds(eta, s - 1));
  }
  CHECK_THROWS(minimal_s_eta(1.0));
  CHECK_THROWS(minimal_s_eta(0.0));
}

TEST_CASE("growth constant measure") {
  std::vector<DeltaSample> empty_support{{1.0, Point{}}, {2.0, Point{}}};
  CHECK(corollary43_measure(0.5, empty_support) == 0.0);

  std::vector<DeltaSample> one{{1.0, Point{{1, 0.4}}}};
  CHECK(corollary43_measure(0.5, one) >= std::log(1.0 / 0.6) - 1e-12);

  std::mt19937_64 rng(9);
  std::vector<DeltaSample> batch;
  for (int i = 0; i < 10; ++i) batch.push_back({1.0, Point::from_dense(sample_l1_sphere(20, 0.45, rng))});
  const double c = corollary43_measure(0.5, batch);
  CHECK(std::isfinite(c));
  for (const auto& s : batch) {
    CHECK(delta_partial(s.q, s.z, 64) <= std::exp(c * s.z.support_size()) * (1.0 + 1e-12));
  }

  CHECK_THROWS_AS(corollary43_measure(0.5, std::vector<DeltaSample>{}), std::invalid_argument);
  std::vector<DeltaSample> big{{1.0, Point{{1, 0.6}}}};
  CHECK_THROWS_AS(corollary43_measure(0.5, big), std::invalid_argument);
  CHECK_THROWS_AS(corollary43_measure(1.5, one), std::domain_error);
}
