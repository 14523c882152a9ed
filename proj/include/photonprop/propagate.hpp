#pragma once

#include <optional>
#include <string>

#include "photonprop/media.hpp"
#include "photonprop/time_series.hpp"
#include "photonprop/waveforms.hpp"

namespace photonprop {

struct NumericOptions {
  double window_factor = 50.0;
  std::size_t min_samples = std::size_t{1} << 18;
  int asymptotic_order = 6;
  double tolerance = 1e-5;
  int max_refinements = 3;
};

/// Transmitted envelope (1/2pi) int b(0,nu) e^{-i nu tau - A(nu) l} dnu.
/// Without a medium this is the free-space envelope. Throws
/// NonConvergenceError if refinement does not settle within tolerance.
TimeSeries propagate_numeric(const PhotonWaveform& w, const std::optional<AbsorberSpec>& a,
                             const TimeGrid& g, const NumericOptions& opts = {});

/// Which value to return when tau sits exactly on the tau = 0 jump.
enum class Side { Mid, Left, Right };

/// Causal exponential through a matched line (gamma = delta_ph).
double analytic_matched(double delta_ph, double thickness, double tau, Side side = Side::Mid);

struct SplitAmplitude {
  double symmetric = 0.0;
  double antisymmetric = 0.0;

  double total() const { return symmetric + antisymmetric; }
};

/// Symmetric/antisymmetric parts through a matched line of thickness T.
SplitAmplitude analytic_parts_matched(double delta_ph, double thickness, double tau, Side side = Side::Mid);

/// Parts through a broad line of halfwidth Gamma > delta_ph and thickness T_b.
SplitAmplitude analytic_parts_broad(double delta_ph, double width, double thickness_b, double tau,
                                    Side side = Side::Mid);

/// Two-term approximation of the causal output of a broad line.
double approx_broad(double delta_ph, double width, double optical_depth, double tau, Side side = Side::Mid);

/// phi_+/- as functions of x = Delta_eff (tau - t_d) and r = delta_ph / Delta_eff.
double phi_plus(double ratio, double x);
double phi_minus(double ratio, double x);

/// Slow component of the causal exponential behind an EIT medium. The
/// simplified form drops the nearly cancelling T_eit and delta_ph t_d.
double adiabatic_eit(double delta_ph, const AbsorberSpec& a, double tau, bool simplified = false);

/// Slow components of the symmetric and antisymmetric parts.
SplitAmplitude adiabatic_eit_parts(double delta_ph, const AbsorberSpec& a, double tau);

/// Causal input delayed by t_d and attenuated by e^{-T_eit}, no window narrowing.
double eit_delay_only(double delta_ph, const AbsorberSpec& a, double tau);

/// Gaussian envelope through a broad line, quadratic expansion of A.
/// Throws ValidityError unless (delta_ph/Gamma)^2 T < 1.
double gaussian_broad(double delta_ph, double width, double thickness, double tau);

struct AnalyticOptions {
  bool eit_simplified = false;
};

/// Empty when `method` applies to (w, a); otherwise names the violated precondition.
std::optional<std::string> method_precondition(Provenance method, const PhotonWaveform& w,
                                               const std::optional<AbsorberSpec>& a);

/// Evaluates one closed form (or free space) on the grid. Throws
/// ValidityError / UnsupportedError when method_precondition fails.
TimeSeries propagate_analytic(Provenance method, const PhotonWaveform& w, const std::optional<AbsorberSpec>& a,
                              const TimeGrid& g, const AnalyticOptions& opts = {});

/// Adiabatic plus nonadiabatic EIT output for exponential, symmetric or
/// antisymmetric inputs. Gaussian input throws UnsupportedError.
TimeSeries total_eit(const PhotonWaveform& w, const AbsorberSpec& a, const TimeGrid& g);

/// Dispatches to propagate_numeric or propagate_analytic.
TimeSeries propagate(Provenance method, const PhotonWaveform& w, const std::optional<AbsorberSpec>& a,
                     const TimeGrid& g, const NumericOptions& numeric = {}, const AnalyticOptions& analytic = {});

}  // namespace photonprop
