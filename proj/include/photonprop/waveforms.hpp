#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>

namespace photonprop {

// Source photon envelopes in the rotating frame. Times are in units of
// 1/gamma_ref and rates in units of gamma_ref, where gamma_ref is the
// scenario's reference rate. Fourier convention:
//   b(nu) = int b(t) e^{+i nu t} dt,   b(t) = (1/2pi) int b(nu) e^{-i nu t} dnu.

enum class WaveformKind {
  ExponentialCausal,  // e^{-D t} Theta(t)
  SymmetricPart,      // 1/2 e^{-D |t|}
  AntisymmetricPart,  // sgn(t) 1/2 e^{-D |t|}
  Gaussian,           // e^{-D^2 t^2 / 4}
};

std::string_view to_string(WaveformKind kind);
WaveformKind parse_waveform_kind(std::string_view name);

class PhotonWaveform {
 public:
  /// Throws ValidityError unless delta_ph is finite and > 0.
  PhotonWaveform(WaveformKind kind, double delta_ph);

  WaveformKind kind() const { return kind_; }
  /// Spectral halfwidth Delta_ph.
  double delta_ph() const { return delta_ph_; }
  /// tau_ph = 1/Delta_ph.
  double correlation_time() const { return 1.0 / delta_ph_; }
  /// Lifetime of the emitting level, tau_ph / 2.
  double lifetime() const { return 0.5 / delta_ph_; }

  /// True for envelopes that vanish for t < 0.
  bool is_causal() const { return kind_ == WaveformKind::ExponentialCausal; }
  /// Size of the jump right-limit minus left-limit at t = 0 (0 if continuous).
  double jump_at_zero() const;

 private:
  WaveformKind kind_;
  double delta_ph_;
};

/// Time envelope. At the t = 0 jump the midpoint is returned (Theta(0) = 1/2).
double time_amplitude(const PhotonWaveform& w, double t);

/// Fourier transform of time_amplitude.
std::complex<double> spectral_amplitude(const PhotonWaveform& w, double nu);

/// Uniform time grid over local time tau = t - l/c.
class TimeGrid {
 public:
  /// Throws ValidityError unless t_start < t_end and n_points >= 2.
  TimeGrid(double t_start, double t_end, std::size_t n_points);

  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  std::size_t size() const { return n_points_; }
  double spacing() const { return (t_end_ - t_start_) / static_cast<double>(n_points_ - 1); }

  /// i-th sample time; samples within 1e-9 spacing of zero are returned as
  /// exactly 0 so discontinuities land on a sample.
  double at(std::size_t i) const;

  /// Index of the sample at tau = 0, if the grid has one.
  std::optional<std::size_t> zero_index() const;

  bool operator==(const TimeGrid&) const = default;

 private:
  double t_start_;
  double t_end_;
  std::size_t n_points_;
};

}  // namespace photonprop
