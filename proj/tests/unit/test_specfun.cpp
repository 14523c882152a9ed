#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "photonprop/errors.hpp"
#include "photonprop/specfun.hpp"

using namespace photonprop;
namespace sf = photonprop::specfun;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("exact values at the origin") {
  CHECK(sf::bessel_j(0, 0.0) == 1.0);
  CHECK(sf::bessel_j(1, 0.0) == 0.0);
  CHECK(sf::bessel_i(0, 0.0) == 1.0);
  CHECK(sf::bessel_i(1, 0.0) == 0.0);
  CHECK(sf::scaled_bessel_i0(0.0) == 1.0);
  CHECK(sf::erf(0.0) == 0.0);
  CHECK(sf::erfcx(0.0) == 1.0);
}

TEST_CASE("first root of J0") {
  CHECK(std::abs(sf::bessel_j(0, 2.404825557695773)) < 1e-12);
  CHECK(std::abs(oracle::bessel_j_series(0, 2.404825557695773)) < 1e-15);
}

TEST_CASE("bessel_j against extended-precision series and Hankel expansion") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> small(0.0, 40.0);
  std::uniform_real_distribution<double> large(60.0, 1e4);
  double worst = 0.0;
  for (int order : {0, 1}) {
    for (int i = 0; i < 200; ++i) {
      const double x = small(rng);
      const double want = oracle::bessel_j_series(order, x);
      const double got = sf::bessel_j(order, x);
      // relative, with an absolute floor near the zeros
      const double err = std::abs(got - want) / std::max(std::abs(want), 1e-3);
      worst = std::max(worst, err);
    }
    for (int i = 0; i < 100; ++i) {
      const double x = large(rng);
      const double want = oracle::bessel_j_hankel(order, x);
      const double err = std::abs(sf::bessel_j(order, x) - want) / std::max(std::abs(want), 1e-3 / std::sqrt(x));
      worst = std::max(worst, err);
    }
  }
  MESSAGE("worst bessel_j error " << worst);
  CHECK(worst <= 1e-12);
}

TEST_CASE("bessel_i against extended-precision series") {
  CHECK(rel(sf::bessel_i(0, 1.0), 1.2660658777520084) < 1e-15);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 700.0);
  double worst = 0.0;
  for (int order : {0, 1}) {
    for (int i = 0; i < 100; ++i) {
      const double x = dist(rng);
      worst = std::max(worst, rel(sf::bessel_i(order, x), oracle::bessel_i_series(order, x)));
    }
  }
  MESSAGE("worst bessel_i relative error " << worst);
  CHECK(worst <= 1e-12);
}

TEST_CASE("scaled bessel_i over [0, 1e6]") {
  CHECK(rel(sf::scaled_bessel_i0(1.0), 0.4657596075936404) < 1e-15);
  const double a200 = 1.0 / std::sqrt(2.0 * std::numbers::pi * 200.0) * (1.0 + 1.0 / 1600.0);
  CHECK(rel(sf::scaled_bessel_i0(200.0), a200) < 1e-5);
  CHECK(rel(sf::scaled_bessel_i0(200.0), oracle::scaled_bessel_i_series(0, 200.0)) < 1e-12);

  double worst = 0.0;
  for (double x : {0.5, 3.0, 25.0, 150.0, 699.0, 700.0}) {
    worst = std::max(worst, rel(sf::scaled_bessel_i0(x), oracle::scaled_bessel_i_series(0, x)));
    worst = std::max(worst, rel(sf::scaled_bessel_i1(x), oracle::scaled_bessel_i_series(1, x)));
  }
  for (double x : {700.5, 1000.0, 5e3, 1e4, 1e5, 1e6}) {
    worst = std::max(worst, rel(sf::scaled_bessel_i0(x), oracle::scaled_bessel_i_hankel(0, x)));
    worst = std::max(worst, rel(sf::scaled_bessel_i1(x), oracle::scaled_bessel_i_hankel(1, x)));
  }
  MESSAGE("worst scaled bessel_i relative error " << worst);
  CHECK(worst <= 1e-10);
}

TEST_CASE("scaled form times e^x matches bessel_i up to x = 50") {
  for (double x = 0.0; x <= 50.0; x += 0.37) {
    CHECK(rel(sf::scaled_bessel_i0(x) * std::exp(x), sf::bessel_i(0, x)) < 1e-9);
  }
}

TEST_CASE("erf against Maclaurin series") {
  CHECK(rel(sf::erf(1.0), 0.8427007929497149) < 1e-15);
  double worst = 0.0;
  for (double x = -6.0; x <= 6.0; x += 0.0731) {
    if (x == 0.0) continue;
    worst = std::max(worst, rel(sf::erf(x), oracle::erf_series(x)));
  }
  MESSAGE("worst erf relative error " << worst);
  CHECK(worst <= 1e-12);
}

TEST_CASE("erf is odd bit for bit") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 8.0);
  CHECK(sf::erf(-1.3) == -sf::erf(1.3));
  for (int i = 0; i < 1000; ++i) {
    const double x = dist(rng);
    CHECK(sf::erf(-x) == -sf::erf(x));
  }
}

TEST_CASE("erfcx against series and asymptotics") {
  double worst = 0.0;
  for (double x = -5.0; x <= 8.0; x += 0.113) worst = std::max(worst, rel(sf::erfcx(x), oracle::erfcx_series(x)));
  MESSAGE("worst erfcx relative error " << worst);
  CHECK(worst <= 1e-12);
  // erfcx(x) ~ 1/(x sqrt(pi)) (1 - 1/(2x^2) + 3/(4x^4))
  for (double x : {30.0, 100.0, 1e4}) {
    const double a = 1.0 / (x * std::sqrt(std::numbers::pi)) * (1.0 - 0.5 / (x * x) + 0.75 / (x * x * x * x));
    CHECK(rel(sf::erfcx(x), a) < 1e-6);
  }
  CHECK(std::isinf(sf::erfcx(-30.0)));
}

TEST_CASE("derivative identities by central differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(1e-4, 50.0);
  const double h = 1e-5;
  for (int i = 0; i < 100; ++i) {
    const double x = std::max(dist(rng), h);
    const double d = (sf::bessel_j(0, x + h) - sf::bessel_j(0, x - h)) / (2 * h);
    CHECK(std::abs(d + sf::bessel_j(1, x)) < 1e-8);
  }
  for (int i = 0; i < 100; ++i) {
    const double x = dist(rng) / 10.0 - 2.5;
    const double d = (sf::erf(x + h) - sf::erf(x - h)) / (2 * h);
    CHECK(std::abs(d - 2.0 / std::sqrt(std::numbers::pi) * std::exp(-x * x)) < 1e-8);
  }
}

TEST_CASE("J1(x)/x is smooth through the origin") {
  CHECK(sf::bessel_j1_over_x(0.0) == 0.5);
  for (double x : {1e-8, 5e-4, 9.99e-4, 1e-3, 1.01e-3, 0.1, 3.0}) {
    CHECK(rel(sf::bessel_j1_over_x(x), oracle::bessel_j_series(1, x) / x) < 1e-13);
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(sf::bessel_j(0, -1.0), DomainError);
  CHECK_THROWS_AS(sf::bessel_j(2, 1.0), DomainError);
  CHECK_THROWS_AS(sf::bessel_j(0, std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(sf::bessel_i(0, 701.0), DomainError);
  CHECK_THROWS_AS(sf::bessel_i(1, -0.5), DomainError);
  CHECK_THROWS_AS(sf::scaled_bessel_i0(-1.0), DomainError);
  CHECK_THROWS_AS(sf::erf(std::nan("")), DomainError);
}
