#pragma once

// Real-argument special functions used by the closed-form propagation
// solutions. Accuracy targets (checked against extended-precision series in
// tests):
//   bessel_j        relative 1e-12 on [0, 1e4] (absolute near zeros)
//   bessel_i        relative 1e-12 on [0, 700]
//   scaled_bessel_* relative 1e-10 on [0, 1e6]
//   erf, erfcx      relative 1e-12

namespace photonprop::specfun {

/// J_order(x), order in {0, 1}, x >= 0.
double bessel_j(int order, double x);

/// I_order(x), order in {0, 1}, 0 <= x <= 700. Larger arguments overflow in
/// products like e^{-T} I0(T); use the scaled variants instead.
double bessel_i(int order, double x);

inline constexpr double kBesselIMaxArgument = 700.0;

/// e^{-x} I0(x) without intermediate overflow.
double scaled_bessel_i0(double x);

/// e^{-x} I1(x) without intermediate overflow.
double scaled_bessel_i1(double x);

/// J1(x)/x with the x -> 0 limit 1/2.
double bessel_j1_over_x(double x);

/// Error function, odd bit-for-bit.
double erf(double x);

/// Scaled complementary error function e^{x^2} erfc(x), finite for all
/// finite x where the result is representable.
double erfcx(double x);

}  // namespace photonprop::specfun
