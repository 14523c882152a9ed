#include "photonprop/media.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "photonprop/errors.hpp"

namespace photonprop {

namespace {

void require_rate(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw ValidityError(std::string(name) + " must be > 0, got " + std::to_string(v));
  }
}

void require_thickness(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw ValidityError("effective thickness must be >= 0, got " + std::to_string(t));
  }
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

AbsorberSpec AbsorberSpec::matched(double gamma, double thickness) {
  require_rate(gamma, "gamma");
  require_thickness(thickness);
  return {MatchedLine{gamma}, thickness};
}

AbsorberSpec AbsorberSpec::broad(double width, double thickness) {
  require_rate(width, "Gamma");
  require_thickness(thickness);
  return {BroadLine{width}, thickness};
}

AbsorberSpec AbsorberSpec::eit(double width, double gamma_m, double omega, double thickness) {
  require_rate(width, "Gamma");
  require_rate(gamma_m, "gamma_m");
  require_rate(omega, "Omega");
  require_thickness(thickness);
  if (!(width > gamma_m)) {
    throw ValidityError("EIT medium needs Gamma > gamma_m, got Gamma=" + std::to_string(width) +
                        " gamma_m=" + std::to_string(gamma_m));
  }
  return {EitLine{width, gamma_m, omega}, thickness};
}

double AbsorberSpec::linewidth() const {
  return std::visit(overloaded{[](const MatchedLine& l) { return l.gamma; },
                               [](const BroadLine& l) { return l.width; },
                               [](const EitLine& l) { return l.width; }},
                    line_);
}

std::string_view AbsorberSpec::kind_name() const {
  return std::visit(overloaded{[](const MatchedLine&) { return std::string_view("matched"); },
                               [](const BroadLine&) { return std::string_view("broad"); },
                               [](const EitLine&) { return std::string_view("eit"); }},
                    line_);
}

AbsorberSpec AbsorberSpec::with_thickness(double thickness) const {
  require_thickness(thickness);
  return {line_, thickness};
}

std::complex<double> spectral_response(const AbsorberSpec& a, double nu) {
  using namespace std::complex_literals;
  const double depth = a.optical_depth();
  return std::visit(
      overloaded{[&](const MatchedLine& l) -> std::complex<double> { return depth / (l.gamma - 1i * nu); },
                 [&](const BroadLine& l) -> std::complex<double> { return depth / (l.width - 1i * nu); },
                 [&](const EitLine& l) -> std::complex<double> {
                   const std::complex<double> m = l.gamma_m - 1i * nu;
                   return depth * m / ((l.width - 1i * nu) * m + l.omega * l.omega);
                 }},
      a.line());
}

EitParams eit_params(const AbsorberSpec& a) {
  const EitLine* l = a.eit_line();
  if (l == nullptr) {
    throw ValidityError("EIT parameters need an eit medium, got " + std::string(a.kind_name()));
  }
  const double g = l->width;
  const double gm = l->gamma_m;
  const double w2 = l->omega * l->omega;
  if (w2 < gm * g) {
    throw ValidityError("adiabatic expansion requires Omega^2 >= gamma_m Gamma, got Omega^2=" +
                        std::to_string(w2) + " gamma_m Gamma=" + std::to_string(gm * g));
  }
  const double depth = a.optical_depth();
  const double d0 = w2 + gm * g;
  EitParams p{};
  p.t_eit = depth * gm / d0;
  p.t_d = depth * (w2 - gm * gm) / (d0 * d0);
  const double curvature = depth * (w2 * (g + 2.0 * gm) - gm * gm * gm) / (d0 * d0 * d0);
  p.delta_eff = curvature > 0.0 ? 1.0 / std::sqrt(curvature) : std::numeric_limits<double>::infinity();
  p.delta_eit = w2 / g;
  return p;
}

std::complex<double> adiabatic_response(const AbsorberSpec& a, double nu) {
  const EitParams p = eit_params(a);
  return {p.t_eit + nu * nu / (p.delta_eff * p.delta_eff), -nu * p.t_d};
}

RationalResponse rational_response(const AbsorberSpec& a) {
  const double depth = a.optical_depth();
  return std::visit(overloaded{[&](const MatchedLine& l) {
                                 return RationalResponse{depth, {1.0}, {l.gamma, 1.0}};
                               },
                               [&](const BroadLine& l) {
                                 return RationalResponse{depth, {1.0}, {l.width, 1.0}};
                               },
                               [&](const EitLine& l) {
                                 return RationalResponse{
                                     depth,
                                     {l.gamma_m, 1.0},
                                     {l.width * l.gamma_m + l.omega * l.omega, l.width + l.gamma_m, 1.0}};
                               }},
                    a.line());
}

AbsorberSpec fe57_siderite(double omega, double thickness) {
  return AbsorberSpec::eit(kFe57WidthRatio, 1.0, omega, thickness);
}

}  // namespace photonprop
