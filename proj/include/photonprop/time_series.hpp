#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "photonprop/media.hpp"
#include "photonprop/waveforms.hpp"

namespace photonprop {

/// How a TimeSeries was computed.
enum class Provenance {
  FreeSpace,            // input envelope, no absorber
  Numeric,              // spectral propagator
  AnalyticMatched,      // matched-line dynamical beat
  AnalyticParts,        // symmetric/antisymmetric closed forms
  AnalyticBroadApprox,  // two-term broad-line approximation
  AdiabaticEit,         // slow (window-filtered) component
  TotalEit,             // adiabatic + nonadiabatic
  GaussianApprox,       // Gaussian through broad line, quadratic expansion
  EitDelayOnly,         // delayed, attenuated input without window narrowing
};

std::string_view to_string(Provenance p);
Provenance parse_provenance(std::string_view name);

/// One-sided limits at a sample that sits on a jump of the envelope.
struct Discontinuity {
  std::size_t index;
  std::complex<double> left;
  std::complex<double> right;
};

struct NumericDiagnostics {
  std::size_t fft_size = 0;
  double window = 0.0;  // |nu| <= window
  double period = 0.0;  // time period of the transform
  int refinements = 0;
  double drift = 0.0;   // max-abs change at the last refinement
  int asymptotic_order = 0;
};

struct TimeSeries {
  TimeGrid grid;
  std::vector<std::complex<double>> amplitude;
  Provenance provenance;
  PhotonWaveform source;
  std::optional<AbsorberSpec> medium;
  std::optional<Discontinuity> jump;
  std::optional<NumericDiagnostics> diagnostics;

  std::size_t size() const { return amplitude.size(); }
  double tau(std::size_t i) const { return grid.at(i); }
  /// Value approached from below / above; differs from amplitude[i] only at a jump.
  std::complex<double> left_limit(std::size_t i) const;
  std::complex<double> right_limit(std::size_t i) const;
};

/// Samples the free-space envelope (provenance FreeSpace).
TimeSeries sample(const PhotonWaveform& w, const TimeGrid& g);

}  // namespace photonprop
