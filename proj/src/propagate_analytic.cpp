#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "photonprop/detail/quadrature.hpp"
#include "photonprop/errors.hpp"
#include "photonprop/propagate.hpp"
#include "photonprop/specfun.hpp"

namespace photonprop {

namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) throw ValidityError(std::string(name) + " must be > 0, got " + std::to_string(v));
}

void require_thickness(double t) {
  if (!std::isfinite(t) || t < 0.0) throw ValidityError("thickness must be >= 0, got " + std::to_string(t));
}

bool same_rate(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y)); }

// Step value of a unit jump at tau = 0.
double step(double tau, Side side) {
  if (tau > 0.0) return 1.0;
  if (tau < 0.0) return 0.0;
  switch (side) {
    case Side::Left:
      return 0.0;
    case Side::Right:
      return 1.0;
    case Side::Mid:
      break;
  }
  return 0.5;
}

// int_0^T e^{-(T-x)/2} J0(2 sqrt(x k)) dx, written in y = T - x and cut
// where the weight drops below double precision.
double matched_kernel(double thickness, double k) {
  const double hi = std::min(thickness, 90.0);
  return detail::integrate(
      [&](double y) { return std::exp(-0.5 * y) * specfun::bessel_j(0, 2.0 * std::sqrt((thickness - y) * k)); },
      0.0, hi, "matched-line parts");
}

// int_0^T e^{-(T-x)} J0(2 sqrt(x k)) dx
double broad_kernel(double thickness, double k) {
  const double hi = std::min(thickness, 45.0);
  return detail::integrate(
      [&](double y) { return std::exp(-y) * specfun::bessel_j(0, 2.0 * std::sqrt((thickness - y) * k)); },
      0.0, hi, "broad-line parts");
}

// e^{a} erfc(z) without overflow of the separate factors.
double exp_erfc(double a, double z) {
  if (z >= 0.0) return std::exp(a - z * z) * specfun::erfcx(z);
  return 2.0 * std::exp(a) - std::exp(a - z * z) * specfun::erfcx(-z);
}

struct SlowParts {
  double r_plus;
  double r_minus;
};

SlowParts slow_parts(double delta_ph, const EitParams& p, double tau) {
  const double r = delta_ph / p.delta_eff;
  const double u = 0.5 * p.delta_eff * (tau - p.t_d);
  return {0.5 * exp_erfc(r * r - 2.0 * r * u - p.t_eit, r - u), 0.5 * exp_erfc(r * r + 2.0 * r * u - p.t_eit, r + u)};
}

bool is_exp_or_part(WaveformKind k) { return k != WaveformKind::Gaussian; }

double pick(WaveformKind k, const SplitAmplitude& s) {
  switch (k) {
    case WaveformKind::SymmetricPart:
      return s.symmetric;
    case WaveformKind::AntisymmetricPart:
      return s.antisymmetric;
    default:
      return s.total();
  }
}

std::optional<std::string> eit_validity(const AbsorberSpec& a) {
  try {
    (void)eit_params(a);
  } catch (const ValidityError& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

}  // namespace

double analytic_matched(double delta_ph, double thickness, double tau, Side side) {
  require_positive(delta_ph, "delta_ph");
  require_thickness(thickness);
  if (tau <= 0.0) return step(tau, side);
  return std::exp(-delta_ph * tau) * specfun::bessel_j(0, 2.0 * std::sqrt(thickness * delta_ph * tau));
}

SplitAmplitude analytic_parts_matched(double delta_ph, double thickness, double tau, Side side) {
  require_positive(delta_ph, "delta_ph");
  require_thickness(thickness);
  const double half = 0.5 * std::exp(-0.5 * thickness);
  if (tau < 0.0 || (tau == 0.0 && side == Side::Left)) {
    const double v = 0.5 * std::exp(delta_ph * tau - 0.5 * thickness);
    return {v, -v};
  }
  if (tau == 0.0 && side == Side::Mid) return {half, 0.5 - half};
  if (tau == 0.0) return {half, 1.0 - half};
  const double k = delta_ph * tau;
  const double j0 = specfun::bessel_j(0, 2.0 * std::sqrt(thickness * k));
  const double inner = 0.5 * matched_kernel(thickness, k);
  const double decay = 0.5 * std::exp(-k);
  return {decay * (j0 - inner), decay * (j0 + inner)};
}

SplitAmplitude analytic_parts_broad(double delta_ph, double width, double thickness_b, double tau, Side side) {
  require_positive(delta_ph, "delta_ph");
  require_positive(width, "Gamma");
  require_thickness(thickness_b);
  if (!(width > delta_ph)) {
    throw ValidityError("broad-line parts require Gamma > delta_ph, got Gamma=" + std::to_string(width) +
                        " delta_ph=" + std::to_string(delta_ph));
  }
  const double depth = thickness_b * width;
  const double t_plus = depth / (width + delta_ph);
  const double t_minus = depth / (width - delta_ph);
  if (tau < 0.0 || (tau == 0.0 && side == Side::Left)) {
    const double v = 0.5 * std::exp(delta_ph * tau - t_plus);
    return {v, -v};
  }
  const double half = 0.5 * std::exp(-t_plus);
  if (tau == 0.0 && side == Side::Mid) return {half, 0.5 - half};
  if (tau == 0.0) return {half, 1.0 - half};
  const double base = 0.5 * std::exp(-delta_ph * tau - t_minus);
  const double gm = broad_kernel(t_minus, (width - delta_ph) * tau);
  const double gp = broad_kernel(t_plus, (width + delta_ph) * tau);
  const double pre = 0.5 * std::exp(-width * tau);
  return {base + pre * (gm - gp), base + pre * (gm + gp)};
}

double approx_broad(double delta_ph, double width, double optical_depth, double tau, Side side) {
  require_positive(delta_ph, "delta_ph");
  require_positive(width, "Gamma");
  require_thickness(optical_depth);
  if (tau <= 0.0) return step(tau, side);
  const double x = 2.0 * std::sqrt(optical_depth * tau);
  return std::exp(-width * tau) *
         (specfun::bessel_j(0, x) + (width - delta_ph) * tau * 2.0 * specfun::bessel_j1_over_x(x));
}

double phi_plus(double ratio, double x) { return 0.5 * exp_erfc(ratio * ratio, ratio - 0.5 * x); }

double phi_minus(double ratio, double x) { return 0.5 * exp_erfc(ratio * ratio, ratio + 0.5 * x); }

double adiabatic_eit(double delta_ph, const AbsorberSpec& a, double tau, bool simplified) {
  require_positive(delta_ph, "delta_ph");
  const EitParams p = eit_params(a);
  const double v = slow_parts(delta_ph, p, tau).r_plus;
  return simplified ? v * std::exp(p.t_eit - delta_ph * p.t_d) : v;
}

SplitAmplitude adiabatic_eit_parts(double delta_ph, const AbsorberSpec& a, double tau) {
  require_positive(delta_ph, "delta_ph");
  const SlowParts r = slow_parts(delta_ph, eit_params(a), tau);
  return {0.5 * (r.r_plus + r.r_minus), 0.5 * (r.r_plus - r.r_minus)};
}

double eit_delay_only(double delta_ph, const AbsorberSpec& a, double tau) {
  require_positive(delta_ph, "delta_ph");
  const EitParams p = eit_params(a);
  const double s = tau - p.t_d;
  if (s < 0.0) return 0.0;
  const double v = std::exp(-delta_ph * s - p.t_eit);
  return s == 0.0 ? 0.5 * v : v;
}

double gaussian_broad(double delta_ph, double width, double thickness, double tau) {
  require_positive(delta_ph, "delta_ph");
  require_positive(width, "Gamma");
  require_thickness(thickness);
  const double f = (delta_ph / width) * (delta_ph / width);
  if (!(f * thickness < 1.0)) {
    throw ValidityError("Gaussian expansion requires (delta_ph/Gamma)^2 T < 1, got " + std::to_string(f * thickness));
  }
  const double eta = 1.0 / std::sqrt(1.0 - f * thickness);
  const double s = eta * delta_ph * (tau + thickness / width);
  return eta * std::exp(-thickness - 0.25 * s * s);
}

std::optional<std::string> method_precondition(Provenance method, const PhotonWaveform& w,
                                               const std::optional<AbsorberSpec>& a) {
  const WaveformKind k = w.kind();
  const double d = w.delta_ph();
  auto need_medium = [&](std::string_view kind) -> std::optional<std::string> {
    if (!a || a->kind_name() != kind) {
      return std::string(to_string(method)) + " requires a " + std::string(kind) + " medium";
    }
    return std::nullopt;
  };
  switch (method) {
    case Provenance::FreeSpace:
    case Provenance::Numeric:
      return std::nullopt;
    case Provenance::AnalyticMatched:
      if (k != WaveformKind::ExponentialCausal) return "analytic_matched requires an exponential source";
      if (auto e = need_medium("matched")) return e;
      if (!same_rate(a->linewidth(), d)) return "analytic_matched requires gamma = delta_ph (matched line)";
      return std::nullopt;
    case Provenance::AnalyticParts:
      if (!is_exp_or_part(k)) return "analytic_parts requires an exponential, symmetric or antisymmetric source";
      if (a && a->kind_name() == "matched") {
        if (!same_rate(a->linewidth(), d)) return "analytic_parts on a matched line requires gamma = delta_ph";
        return std::nullopt;
      }
      if (a && a->kind_name() == "broad") {
        if (!(a->linewidth() > d)) return "analytic_parts on a broad line requires Gamma > delta_ph";
        return std::nullopt;
      }
      return "analytic_parts requires a matched or broad medium";
    case Provenance::AnalyticBroadApprox:
      if (k != WaveformKind::ExponentialCausal) return "broad_approx requires an exponential source";
      return need_medium("broad");
    case Provenance::AdiabaticEit:
      if (!is_exp_or_part(k)) return "adiabatic_eit requires an exponential, symmetric or antisymmetric source";
      if (auto e = need_medium("eit")) return e;
      return eit_validity(*a);
    case Provenance::TotalEit:
      if (!is_exp_or_part(k)) return "total_eit has no closed form for a gaussian source; use numeric";
      if (auto e = need_medium("eit")) return e;
      if (auto e = eit_validity(*a)) return e;
      if (d > a->linewidth() && !same_rate(d, a->linewidth())) return "total_eit requires delta_ph <= Gamma";
      return std::nullopt;
    case Provenance::GaussianApprox: {
      if (k != WaveformKind::Gaussian) return "gaussian_approx requires a gaussian source";
      if (auto e = need_medium("broad")) return e;
      const double f = (d / a->linewidth()) * (d / a->linewidth());
      if (!(f * a->thickness() < 1.0)) return "gaussian_approx requires (delta_ph/Gamma)^2 T < 1";
      return std::nullopt;
    }
    case Provenance::EitDelayOnly:
      if (k != WaveformKind::ExponentialCausal) return "eit_delay_only requires an exponential source";
      if (auto e = need_medium("eit")) return e;
      return eit_validity(*a);
  }
  return std::nullopt;
}

TimeSeries propagate_analytic(Provenance method, const PhotonWaveform& w, const std::optional<AbsorberSpec>& a,
                              const TimeGrid& g, const AnalyticOptions& opts) {
  if (method == Provenance::Numeric) throw ValidityError("numeric is not a closed form; use propagate_numeric");
  if (method == Provenance::FreeSpace) return sample(w, g);
  if (method == Provenance::TotalEit && w.kind() == WaveformKind::Gaussian) {
    throw UnsupportedError("total_eit has no closed form for a gaussian source; use numeric");
  }
  if (auto e = method_precondition(method, w, a)) throw ValidityError(*e);

  const WaveformKind k = w.kind();
  const double d = w.delta_ph();
  std::function<double(double, Side)> eval;
  switch (method) {
    case Provenance::AnalyticMatched:
      eval = [&](double t, Side s) { return analytic_matched(d, a->thickness(), t, s); };
      break;
    case Provenance::AnalyticParts:
      if (a->kind_name() == "matched") {
        eval = [&](double t, Side s) { return pick(k, analytic_parts_matched(d, a->thickness(), t, s)); };
      } else {
        eval = [&](double t, Side s) {
          return pick(k, analytic_parts_broad(d, a->linewidth(), a->thickness(), t, s));
        };
      }
      break;
    case Provenance::AnalyticBroadApprox:
      eval = [&](double t, Side s) { return approx_broad(d, a->linewidth(), a->optical_depth(), t, s); };
      break;
    case Provenance::AdiabaticEit:
      if (k == WaveformKind::ExponentialCausal) {
        eval = [&](double t, Side) { return adiabatic_eit(d, *a, t, opts.eit_simplified); };
      } else {
        eval = [&](double t, Side) { return pick(k, adiabatic_eit_parts(d, *a, t)); };
      }
      break;
    case Provenance::TotalEit: {
      const bool matched = same_rate(d, a->linewidth());
      eval = [&, matched](double t, Side s) {
        const SplitAmplitude fast = matched ? analytic_parts_matched(d, a->thickness(), t, s)
                                            : analytic_parts_broad(d, a->linewidth(), a->thickness(), t, s);
        const double slow = k == WaveformKind::ExponentialCausal ? adiabatic_eit(d, *a, t)
                                                                 : pick(k, adiabatic_eit_parts(d, *a, t));
        return pick(k, fast) + slow;
      };
      break;
    }
    case Provenance::GaussianApprox:
      eval = [&](double t, Side) { return gaussian_broad(d, a->linewidth(), a->thickness(), t); };
      break;
    case Provenance::EitDelayOnly:
      eval = [&](double t, Side) { return eit_delay_only(d, *a, t); };
      break;
    default:
      break;
  }

  TimeSeries ts{g, {}, method, w, a, std::nullopt, std::nullopt};
  ts.amplitude.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) ts.amplitude.emplace_back(eval(g.at(i), Side::Mid));
  if (const auto z = g.zero_index()) {
    const double left = eval(0.0, Side::Left);
    const double right = eval(0.0, Side::Right);
    if (left != right) ts.jump = Discontinuity{*z, left, right};
  }
  return ts;
}

TimeSeries total_eit(const PhotonWaveform& w, const AbsorberSpec& a, const TimeGrid& g) {
  return propagate_analytic(Provenance::TotalEit, w, a, g);
}

TimeSeries propagate(Provenance method, const PhotonWaveform& w, const std::optional<AbsorberSpec>& a,
                     const TimeGrid& g, const NumericOptions& numeric, const AnalyticOptions& analytic) {
  if (method == Provenance::Numeric) return propagate_numeric(w, a, g, numeric);
  return propagate_analytic(method, w, a, g, analytic);
}

}  // namespace photonprop
