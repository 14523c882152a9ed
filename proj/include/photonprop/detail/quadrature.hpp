#pragma once

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "photonprop/errors.hpp"

namespace photonprop::detail {

inline constexpr double kQuadratureAbsTol = 1e-10;

template <class F>
double bisect(F& f, double lo, double hi, double tol, int depth, double& err) {
  double e = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 0, 0.0, &e);
  if (e <= tol || depth == 0) {
    err += e;
    return v;
  }
  const double mid = 0.5 * (lo + hi);
  return bisect(f, lo, mid, 0.5 * tol, depth - 1, err) + bisect(f, mid, hi, 0.5 * tol, depth - 1, err);
}

/// Adaptive Gauss-Kronrod over [lo, hi] with an absolute error target;
/// throws NonConvergenceError when the accumulated error estimate exceeds
/// kQuadratureAbsTol.
template <class F>
double integrate(F f, double lo, double hi, const char* what) {
  if (hi <= lo) return 0.0;
  double err = 0.0;
  const double v = bisect(f, lo, hi, 1e-13, 40, err);
  if (!std::isfinite(v) || err > kQuadratureAbsTol) {
    throw NonConvergenceError(std::string(what) + ": quadrature error estimate " + std::to_string(err) +
                              " exceeds " + std::to_string(kQuadratureAbsTol));
  }
  return v;
}

}  // namespace photonprop::detail
