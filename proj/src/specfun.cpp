#include "photonprop/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/bessel.hpp>

#include "photonprop/errors.hpp"

namespace photonprop::specfun {

namespace {

void require_order(int order, const char* fn) {
  if (order != 0 && order != 1) {
    throw DomainError(std::string(fn) + ": only orders 0 and 1 are supported");
  }
}

void require_nonnegative(double x, const char* fn) {
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError(std::string(fn) + ": argument must be finite and >= 0, got " +
                      std::to_string(x));
  }
}

// e^{-x} I_nu(x) for large x from the Hankel-type expansion
//   e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(nu) / x^k.
// Above x = 700 the first handful of terms already reach double precision.
double scaled_bessel_i_asymptotic(int order, double x) {
  const double mu = 4.0 * order * order;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * -(mu - odd * odd) / (8.0 * k * x);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

double scaled_bessel_i(int order, double x, const char* fn) {
  require_nonnegative(x, fn);
  if (x <= kBesselIMaxArgument) {
    return std::exp(-x) * boost::math::cyl_bessel_i(order, x);
  }
  return scaled_bessel_i_asymptotic(order, x);
}

// exp(x*x) with the square split so that the leading product is exact.
double exp_of_square(double x) {
  const double hi = static_cast<double>(static_cast<float>(x));
  const double lo = x - hi;
  return std::exp(hi * hi) * std::exp(lo * (2.0 * hi + lo));
}

double erfcx_nonnegative(double x) {
  if (x < 26.0) return exp_of_square(x) * std::erfc(x);
  // 1/(x sqrt(pi)) * sum (-1)^k (2k-1)!! / (2x^2)^k
  const double inv = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 12; ++k) {
    term *= -(2.0 * k - 1.0) * inv;
    sum += term;
  }
  return sum / (x * std::sqrt(std::numbers::pi));
}

}  // namespace

double bessel_j(int order, double x) {
  require_order(order, "bessel_j");
  require_nonnegative(x, "bessel_j");
  return boost::math::cyl_bessel_j(order, x);
}

double bessel_i(int order, double x) {
  require_order(order, "bessel_i");
  require_nonnegative(x, "bessel_i");
  if (x > kBesselIMaxArgument) {
    throw DomainError("bessel_i: argument " + std::to_string(x) +
                      " exceeds 700; use scaled_bessel_i0/i1");
  }
  return boost::math::cyl_bessel_i(order, x);
}

double scaled_bessel_i0(double x) { return scaled_bessel_i(0, x, "scaled_bessel_i0"); }

double scaled_bessel_i1(double x) { return scaled_bessel_i(1, x, "scaled_bessel_i1"); }

double bessel_j1_over_x(double x) {
  require_nonnegative(x, "bessel_j1_over_x");
  if (x < 1e-3) {
    const double x2 = x * x;
    return 0.5 - x2 / 16.0 + x2 * x2 / 384.0;
  }
  return boost::math::cyl_bessel_j(1, x) / x;
}

double erf(double x) {
  if (std::isnan(x)) throw DomainError("erf: NaN argument");
  return std::copysign(std::erf(std::abs(x)), x);
}

double erfcx(double x) {
  if (std::isnan(x)) throw DomainError("erfcx: NaN argument");
  if (x >= 0.0) return erfcx_nonnegative(x);
  if (x < -26.6) return std::numeric_limits<double>::infinity();
  // erfc(-y) = 2 - erfc(y)
  return 2.0 * exp_of_square(x) - erfcx_nonnegative(-x);
}

}  // namespace photonprop::specfun
