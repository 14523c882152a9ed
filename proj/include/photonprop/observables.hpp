#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "photonprop/media.hpp"
#include "photonprop/time_series.hpp"
#include "photonprop/waveforms.hpp"

namespace photonprop {

/// Trapezoid integral; truncated is set when a boundary sample exceeds 1e-6
/// in magnitude (support not covered by the grid).
struct IntegralResult {
  double value = 0.0;
  bool truncated = false;
};

/// Re int b dtau (dipole element set to 1).
IntegralResult pulse_area(const TimeSeries& ts);

/// int |b|^2 dtau.
IntegralResult integrated_intensity(const TimeSeries& ts);

/// (1/2pi) int |b(0,nu)|^2 e^{-2 Re A(nu) l} dnu by adaptive quadrature.
double spectral_energy(const PhotonWaveform& w, const std::optional<AbsorberSpec>& a);

/// Closed-form int |b(0,t)|^2 dt of the input envelope.
double free_space_energy(const PhotonWaveform& w);

struct EnergySplit {
  double symmetric = 0.0;
  double antisymmetric = 0.0;

  double total() const { return symmetric + antisymmetric; }
};

/// Matched line of thickness T, in units of U0(0) = 1/(2 delta_ph).
EnergySplit u_matched(double thickness);

/// Broad line (Gamma > delta_ph) of thickness T_b, in units of U0(0).
EnergySplit u_broad(double delta_ph, double width, double thickness_b);

/// Adiabatic EIT output energy, absolute (U0(0) = 1/(2 delta_ph)).
double u_eit_adiabatic(double delta_ph, const EitParams& p);

/// Gaussian envelope through a broad line, absolute. Throws ValidityError
/// unless (delta_ph/Gamma)^2 T < 1.
double u_gaussian(double delta_ph, double width, double thickness);

enum class ScanKind { Matched, Broad };

std::string_view to_string(ScanKind k);
ScanKind parse_scan_kind(std::string_view name);

/// Energies normalized to U0(0)/2, Beer reference e^{-2T}.
struct ScanRow {
  double thickness;
  double u_s;
  double u_a;
  double u_total;
  double beer;
};

struct ThicknessScan {
  ScanKind kind;
  double delta_ph;
  double width;  // Gamma for broad scans, delta_ph for matched
  std::vector<ScanRow> rows;
};

/// Thickness values must be >= 0 and strictly increasing.
ThicknessScan thickness_scan(ScanKind kind, double delta_ph, double width, const std::vector<double>& thicknesses);

}  // namespace photonprop
