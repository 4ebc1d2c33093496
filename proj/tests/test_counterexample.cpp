#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "dbar/counterexample.hpp"

using namespace dbar;
using cplx = std::complex<double>;

TEST_CASE("lambda values") {
  CHECK(lambda_fn(0.0, 1) == cplx{});
  CHECK(lambda_fn(0.1, 1).real() == doctest::Approx(0.1 * std::log(std::log(100.0))).epsilon(1e-14));
  CHECK(lambda_fn(0.1, 1).real() == doctest::Approx(0.15272).epsilon(1e-4));
  // ln|ζ|^{−2} = e makes the outer logarithm 1.
  const cplx z = std::polar(std::exp(-std::numbers::e / 2.0), 0.8);
  for (int p : {1, 2, 3}) CHECK(std::abs(lambda_fn(z, p) - std::pow(z, p)) < 1e-15);
  CHECK_THROWS_AS(lambda_fn(0.6, 1), std::domain_error);
  CHECK_THROWS_AS(lambda_fn(0.1, 0), std::invalid_argument);
}

TEST_CASE("phi values") {
  CHECK(phi_fn(0.0, 2) == cplx{});
  CHECK(phi_fn(0.5, 1).real() == doctest::Approx(1.0 / std::log(0.25)).epsilon(1e-14));
  CHECK(phi_fn(0.5, 1).real() == doctest::Approx(-0.72135).epsilon(1e-5));
}

TEST_CASE("finite-difference dbar of lambda is phi") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> rad(0.02, 0.55);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  for (int p : {1, 2, 3}) {
    for (int i = 0; i < 20; ++i) {
      const cplx z = std::polar(rad(rng), ang(rng));
      const cplx fd = dbar_lambda_fd(z, p, 1e-4 * std::abs(z));
      CHECK(std::abs(fd - phi_fn(z, p)) <= 1e-5 * std::abs(phi_fn(z, p)));
    }
  }
}

TEST_CASE("phi is bounded by |z|^(p-1)") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int p : {1, 2, 3}) {
    for (int i = 0; i < 10000; ++i) {
      const cplx z = std::polar(0.5999 * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
      CHECK(std::abs(phi_fn(z, p)) <= std::pow(std::abs(z), p - 1));
    }
  }
}

TEST_CASE("form evaluation") {
  const Point z{{1, 0.5}, {2, cplx(0.1, 0.2)}};
  CHECK(form_eval(z, Point{}, 1) == cplx{});
  CHECK(form_eval(Point{{1, 0.5}}, Point{{1, 1.0}}, 1).real() == doctest::Approx(-0.72135).epsilon(1e-5));
  const Point xi{{1, cplx(0.3, -0.1)}, {2, 0.4}};
  const cplx c(0.7, 1.3);
  const Point cxi{{1, c * cplx(0.3, -0.1)}, {2, c * 0.4}};
  for (int p : {1, 2}) {
    CHECK(std::abs(form_eval(z, cxi, p) - std::conj(c) * form_eval(z, xi, p)) < 1e-14);
    CHECK(std::abs(form_eval(z, xi, p)) <= holder_bound(z, xi, p));
  }
}

TEST_CASE("divergence scan") {
  const auto rows = divergence_scan({1, 0.25, doubling_list(4096)});
  REQUIRE(rows.size() == 13);
  CHECK(rows.front().deviation == 0.0);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].deviation > rows[i - 1].deviation);
  CHECK(rows.back().deviation > rows[4].deviation);

  for (int p : {1, 2, 3}) {
    const double R = 0.2;
    const auto r = divergence_scan({p, R, {8, 16}});
    const auto L = [&](double n) { return std::log(std::log(std::pow(R, -2) * std::pow(n, 2.0 / p))); };
    CHECK(r[1].deviation - r[0].deviation == doctest::Approx(std::pow(R, p) * (L(16) - L(8)) / 2.0).epsilon(1e-12));
    CHECK(r[1].a_N == doctest::Approx((L(16) + L(1)) / 2.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(divergence_scan({0, 0.25, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(divergence_scan({1, 0.3, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(divergence_scan({1, 0.25, {4, 2}}), std::invalid_argument);
}

TEST_CASE("doubling lists") {
  CHECK(doubling_list(1) == std::vector<int>{1});
  CHECK(doubling_list(8) == std::vector<int>{1, 2, 4, 8});
  CHECK(doubling_list(10) == std::vector<int>{1, 2, 4, 8, 10});
  CHECK_THROWS_AS(doubling_list(0), std::invalid_argument);
}

TEST_CASE("lambda is its own degree-p homogeneous part") {
  for (int p : {1, 2, 3}) {
    const cplx z = std::polar(0.3, 1.1);
    CHECK(std::abs(homogeneous_part(z, p) - lambda_fn(z, p)) < 1e-14);
  }
}

TEST_CASE("derivative of order p+1 blows up at the origin") {
  for (int p : {1, 2}) {
    const auto d = radial_derivative_probe(p, p + 1, {1e-1, 1e-2, 1e-3, 1e-4});
    for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i] > d[i - 1]);
    const auto d0 = radial_derivative_probe(p, 0, {0.1});
    CHECK(d0[0] == doctest::Approx(std::abs(lambda_fn(0.1, p))));
  }
  CHECK_THROWS_AS(radial_derivative_probe(1, 5, {0.1}), std::invalid_argument);
}
