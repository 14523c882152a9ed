#include "photonprop/observables.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "photonprop/detail/quadrature.hpp"
#include "photonprop/errors.hpp"
#include "photonprop/specfun.hpp"

namespace photonprop {

namespace {

constexpr double kBoundaryLimit = 1e-6;

template <class F>
IntegralResult trapezoid(const TimeSeries& ts, F f) {
  IntegralResult out;
  const std::size_t n = ts.size();
  if (n < 2) return out;
  const double h = ts.grid.spacing();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) acc += 0.5 * h * (f(ts.right_limit(i)) + f(ts.left_limit(i + 1)));
  out.value = acc;
  out.truncated = std::abs(ts.amplitude.front()) > kBoundaryLimit || std::abs(ts.amplitude.back()) > kBoundaryLimit;
  return out;
}

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) throw ValidityError(std::string(name) + " must be > 0, got " + std::to_string(v));
}

void require_thickness(double t) {
  if (!std::isfinite(t) || t < 0.0) throw ValidityError("thickness must be >= 0, got " + std::to_string(t));
}

}  // namespace

IntegralResult pulse_area(const TimeSeries& ts) {
  return trapezoid(ts, [](std::complex<double> b) { return b.real(); });
}

IntegralResult integrated_intensity(const TimeSeries& ts) {
  return trapezoid(ts, [](std::complex<double> b) { return std::norm(b); });
}

double spectral_energy(const PhotonWaveform& w, const std::optional<AbsorberSpec>& a) {
  const double d = w.delta_ph();
  // nu = d tan(theta)
  auto f = [&](double theta) {
    const double c = std::cos(theta);
    const double nu = d * std::tan(theta);
    double v = std::norm(spectral_amplitude(w, nu));
    if (a) v *= std::exp(-2.0 * spectral_response(*a, nu).real());
    return v * d / (c * c);
  };
  const double half = 0.5 * std::numbers::pi;
  const double v = detail::integrate(f, -half, 0.0, "spectral energy") + detail::integrate(f, 0.0, half, "spectral energy");
  return v / (2.0 * std::numbers::pi);
}

double free_space_energy(const PhotonWaveform& w) {
  const double d = w.delta_ph();
  switch (w.kind()) {
    case WaveformKind::ExponentialCausal:
      return 0.5 / d;
    case WaveformKind::SymmetricPart:
    case WaveformKind::AntisymmetricPart:
      return 0.25 / d;
    case WaveformKind::Gaussian:
      return std::sqrt(2.0 * std::numbers::pi) / d;
  }
  return 0.0;
}

EnergySplit u_matched(double thickness) {
  require_thickness(thickness);
  const double i0 = specfun::scaled_bessel_i0(thickness);
  const double i1 = specfun::scaled_bessel_i1(thickness);
  return {0.5 * (i0 - i1), 0.5 * (i0 + i1)};
}

EnergySplit u_broad(double delta_ph, double width, double thickness_b) {
  require_positive(delta_ph, "delta_ph");
  require_positive(width, "Gamma");
  require_thickness(thickness_b);
  if (!(width > delta_ph)) throw ValidityError("u_broad requires Gamma > delta_ph");
  const double rho = delta_ph / width;
  const double a = 1.0 / (1.0 - rho * rho);
  const double tb = thickness_b;
  const double beer = std::exp(-2.0 * a * tb);
  const double u_plus = 0.5 * beer * (1.0 + 4.0 * a * a * rho * rho * tb);
  const double u_minus = 0.5 * beer * (1.0 - 4.0 * a * a * rho * rho * tb);
  // y = T_b - x; the weight e^{-2 a y} is negligible beyond y = 25
  const double hi = std::min(tb, 25.0);
  const double u1 = 2.0 * a * a *
                    detail::integrate([&](double y) { return std::exp(-2.0 * a * y) * specfun::scaled_bessel_i0(tb - y); },
                                      0.0, hi, "u_broad");
  const double u2 =
      4.0 * a * a * a *
      detail::integrate([&](double y) { return y * std::exp(-2.0 * a * y) * specfun::scaled_bessel_i0(tb - y); }, 0.0,
                        hi, "u_broad");
  const double r3 = rho * rho * rho;
  return {u_plus - r3 * (u1 - u2), u_minus + rho * u1 - r3 * u2};
}

double u_eit_adiabatic(double delta_ph, const EitParams& p) {
  require_positive(delta_ph, "delta_ph");
  const double r = delta_ph / p.delta_eff;
  const double z = std::numbers::sqrt2 * r;
  // e^{2 r^2} erfc(sqrt2 r) = erfcx(sqrt2 r)
  return 0.5 / delta_ph * std::exp(-2.0 * p.t_eit) * specfun::erfcx(z);
}

double u_gaussian(double delta_ph, double width, double thickness) {
  require_positive(delta_ph, "delta_ph");
  require_positive(width, "Gamma");
  require_thickness(thickness);
  const double f = (delta_ph / width) * (delta_ph / width);
  if (!(f * thickness < 1.0)) {
    throw ValidityError("Gaussian expansion requires (delta_ph/Gamma)^2 T < 1, got " + std::to_string(f * thickness));
  }
  const double eta = 1.0 / std::sqrt(1.0 - f * thickness);
  return std::sqrt(2.0 * std::numbers::pi) * eta / delta_ph * std::exp(-2.0 * thickness);
}

std::string_view to_string(ScanKind k) { return k == ScanKind::Matched ? "matched" : "broad"; }

ScanKind parse_scan_kind(std::string_view name) {
  if (name == "matched") return ScanKind::Matched;
  if (name == "broad") return ScanKind::Broad;
  throw ConfigError("unknown scan kind '" + std::string(name) + "' (expected matched or broad)");
}

ThicknessScan thickness_scan(ScanKind kind, double delta_ph, double width, const std::vector<double>& thicknesses) {
  require_positive(delta_ph, "delta_ph");
  for (std::size_t i = 0; i < thicknesses.size(); ++i) {
    require_thickness(thicknesses[i]);
    if (i > 0 && !(thicknesses[i] > thicknesses[i - 1])) {
      throw ValidityError("thickness values must be strictly increasing");
    }
  }
  ThicknessScan scan{kind, delta_ph, kind == ScanKind::Matched ? delta_ph : width, {}};
  scan.rows.reserve(thicknesses.size());
  for (double t : thicknesses) {
    const EnergySplit e = kind == ScanKind::Matched ? u_matched(t) : u_broad(delta_ph, width, t);
    scan.rows.push_back({t, 2.0 * e.symmetric, 2.0 * e.antisymmetric, 2.0 * e.total(), std::exp(-2.0 * t)});
  }
  return scan;
}

}  // namespace photonprop
