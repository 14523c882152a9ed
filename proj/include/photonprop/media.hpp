#pragma once

#include <complex>
#include <string_view>
#include <variant>
#include <vector>

namespace photonprop {

/// Natural line of halfwidth gamma; thickness is T = alpha0 l / gamma.
struct MatchedLine {
  double gamma;
};

/// Broad (possibly inhomogeneous) line of total halfwidth Gamma;
/// thickness is T_b = alpha0 l / Gamma.
struct BroadLine {
  double width;
};

/// Three-level medium: g-e line of halfwidth Gamma, e coupled by Omega to a
/// metastable level m with half decay rate gamma_m. Thickness is
/// T_b = alpha0 l / Gamma (absorption without coupling).
struct EitLine {
  double width;
  double gamma_m;
  double omega;
};

using LineShape = std::variant<MatchedLine, BroadLine, EitLine>;

/// Absorber model. Only the product alpha0 l enters any response, so it is
/// stored through the effective thickness.
class AbsorberSpec {
 public:
  static AbsorberSpec matched(double gamma, double thickness);
  static AbsorberSpec broad(double width, double thickness);
  /// Requires width > gamma_m.
  static AbsorberSpec eit(double width, double gamma_m, double omega, double thickness);

  const LineShape& line() const { return line_; }
  double thickness() const { return thickness_; }
  /// gamma for a matched line, Gamma otherwise.
  double linewidth() const;
  /// alpha0 l.
  double optical_depth() const { return thickness_ * linewidth(); }

  std::string_view kind_name() const;
  const EitLine* eit_line() const { return std::get_if<EitLine>(&line_); }

  /// Same line with a different effective thickness.
  AbsorberSpec with_thickness(double thickness) const;

 private:
  AbsorberSpec(LineShape line, double thickness) : line_(line), thickness_(thickness) {}

  LineShape line_;
  double thickness_;
};

/// Quadratic-expansion parameters of an EIT medium around nu = 0.
struct EitParams {
  double t_eit;      // residual thickness at the window centre
  double t_d;        // group delay
  double delta_eff;  // thickness-narrowed window halfwidth
  double delta_eit;  // Omega^2 / Gamma
};

/// A(nu) l. Re >= 0 for every valid absorber.
std::complex<double> spectral_response(const AbsorberSpec& a, double nu);

/// Throws ValidityError for non-EIT media or when Omega^2 < gamma_m Gamma.
EitParams eit_params(const AbsorberSpec& a);

/// T_eit - i nu t_d + nu^2 / Delta_eff^2.
std::complex<double> adiabatic_response(const AbsorberSpec& a, double nu);

/// A(nu) l = scale * N(s) / D(s) with s = -i nu; coefficients ascending in s.
struct RationalResponse {
  double scale;
  std::vector<double> numerator;
  std::vector<double> denominator;
};

RationalResponse rational_response(const AbsorberSpec& a);

/// Level-mixing EIT in 57Fe siderite, rates in units of gamma_m:
/// Gamma = 10 (electron-spin-fluctuation broadened g-e line; placeholder
/// ratio, no measured value available), gamma_m = 1.
AbsorberSpec fe57_siderite(double omega = 20.0, double thickness = 30.0);

inline constexpr double kFe57WidthRatio = 10.0;

}  // namespace photonprop
