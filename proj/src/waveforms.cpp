#include "photonprop/waveforms.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "photonprop/errors.hpp"
#include "photonprop/time_series.hpp"

namespace photonprop {

namespace {

constexpr std::array<std::pair<WaveformKind, std::string_view>, 4> kWaveformNames{{
    {WaveformKind::ExponentialCausal, "exponential"},
    {WaveformKind::SymmetricPart, "symmetric"},
    {WaveformKind::AntisymmetricPart, "antisymmetric"},
    {WaveformKind::Gaussian, "gaussian"},
}};

constexpr std::array<std::pair<Provenance, std::string_view>, 9> kProvenanceNames{{
    {Provenance::FreeSpace, "free_space"},
    {Provenance::Numeric, "numeric"},
    {Provenance::AnalyticMatched, "analytic_matched"},
    {Provenance::AnalyticParts, "analytic_parts"},
    {Provenance::AnalyticBroadApprox, "broad_approx"},
    {Provenance::AdiabaticEit, "adiabatic_eit"},
    {Provenance::TotalEit, "total_eit"},
    {Provenance::GaussianApprox, "gaussian_approx"},
    {Provenance::EitDelayOnly, "eit_delay_only"},
}};

}  // namespace

std::string_view to_string(WaveformKind kind) {
  for (const auto& [k, name] : kWaveformNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

WaveformKind parse_waveform_kind(std::string_view name) {
  for (const auto& [k, n] : kWaveformNames) {
    if (n == name) return k;
  }
  if (name == "exponential_causal") return WaveformKind::ExponentialCausal;
  throw ConfigError("unknown waveform kind '" + std::string(name) +
                    "' (expected exponential, symmetric, antisymmetric or gaussian)");
}

std::string_view to_string(Provenance p) {
  for (const auto& [k, name] : kProvenanceNames) {
    if (k == p) return name;
  }
  return "unknown";
}

Provenance parse_provenance(std::string_view name) {
  for (const auto& [k, n] : kProvenanceNames) {
    if (n == name) return k;
  }
  std::string valid;
  for (const auto& [k, n] : kProvenanceNames) {
    if (!valid.empty()) valid += ", ";
    valid += n;
  }
  throw ConfigError("unknown method '" + std::string(name) + "' (expected one of " + valid + ")");
}

PhotonWaveform::PhotonWaveform(WaveformKind kind, double delta_ph) : kind_(kind), delta_ph_(delta_ph) {
  if (!std::isfinite(delta_ph) || delta_ph <= 0.0) {
    throw ValidityError("photon spectral halfwidth delta_ph must be > 0, got " + std::to_string(delta_ph));
  }
}

double PhotonWaveform::jump_at_zero() const {
  switch (kind_) {
    case WaveformKind::ExponentialCausal:
    case WaveformKind::AntisymmetricPart:
      return 1.0;
    case WaveformKind::SymmetricPart:
    case WaveformKind::Gaussian:
      return 0.0;
  }
  return 0.0;
}

double time_amplitude(const PhotonWaveform& w, double t) {
  const double d = w.delta_ph();
  switch (w.kind()) {
    case WaveformKind::ExponentialCausal:
      if (t > 0.0) return std::exp(-d * t);
      return t == 0.0 ? 0.5 : 0.0;
    case WaveformKind::SymmetricPart:
      return 0.5 * std::exp(-d * std::abs(t));
    case WaveformKind::AntisymmetricPart:
      if (t == 0.0) return 0.0;
      return std::copysign(0.5 * std::exp(-d * std::abs(t)), t);
    case WaveformKind::Gaussian:
      return std::exp(-0.25 * d * d * t * t);
  }
  return 0.0;
}

std::complex<double> spectral_amplitude(const PhotonWaveform& w, double nu) {
  using namespace std::complex_literals;
  const double d = w.delta_ph();
  switch (w.kind()) {
    case WaveformKind::ExponentialCausal:
      return 1.0 / (d - 1i * nu);
    case WaveformKind::SymmetricPart:
      return d / (d * d + nu * nu);
    case WaveformKind::AntisymmetricPart:
      return 1i * nu / (d * d + nu * nu);
    case WaveformKind::Gaussian:
      return 2.0 * std::sqrt(std::numbers::pi) / d * std::exp(-nu * nu / (d * d));
  }
  return 0.0;
}

TimeGrid::TimeGrid(double t_start, double t_end, std::size_t n_points)
    : t_start_(t_start), t_end_(t_end), n_points_(n_points) {
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_start < t_end)) {
    throw ValidityError("time grid needs t_start < t_end, got [" + std::to_string(t_start) + ", " +
                        std::to_string(t_end) + "]");
  }
  if (n_points < 2) throw ValidityError("time grid needs at least 2 points");
}

double TimeGrid::at(std::size_t i) const {
  const double h = spacing();
  const double t = t_start_ + static_cast<double>(i) * h;
  return std::abs(t) < 1e-9 * h ? 0.0 : t;
}

std::optional<std::size_t> TimeGrid::zero_index() const {
  if (t_start_ > 0.0 || t_end_ < 0.0) return std::nullopt;
  const double pos = -t_start_ / spacing();
  const auto i = static_cast<std::size_t>(std::llround(pos));
  if (i < n_points_ && at(i) == 0.0) return i;
  return std::nullopt;
}

std::complex<double> TimeSeries::left_limit(std::size_t i) const {
  if (jump && jump->index == i) return jump->left;
  return amplitude[i];
}

std::complex<double> TimeSeries::right_limit(std::size_t i) const {
  if (jump && jump->index == i) return jump->right;
  return amplitude[i];
}

TimeSeries sample(const PhotonWaveform& w, const TimeGrid& g) {
  TimeSeries ts{g, {}, Provenance::FreeSpace, w, std::nullopt, std::nullopt, std::nullopt};
  ts.amplitude.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) ts.amplitude.emplace_back(time_amplitude(w, g.at(i)));
  if (const auto z = g.zero_index(); z && w.jump_at_zero() != 0.0) {
    const double mid = ts.amplitude[*z].real();
    const double half = 0.5 * w.jump_at_zero();
    ts.jump = Discontinuity{*z, mid - half, mid + half};
  }
  return ts;
}

}  // namespace photonprop
