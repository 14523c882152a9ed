#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <fftw3.h>

#include "photonprop/errors.hpp"
#include "photonprop/propagate.hpp"

namespace photonprop {

namespace {

using cplx = std::complex<double>;

// b(0,nu) as a sum of simple poles in s = -i nu:
// causal coef/(rate + s), anticausal coef/(rate - s).
struct Pole {
  double coef;
  double rate;
  bool causal;
};

std::vector<Pole> source_poles(const PhotonWaveform& w) {
  const double d = w.delta_ph();
  switch (w.kind()) {
    case WaveformKind::ExponentialCausal:
      return {{1.0, d, true}};
    case WaveformKind::SymmetricPart:
      return {{0.5, d, true}, {0.5, d, false}};
    case WaveformKind::AntisymmetricPart:
      return {{0.5, d, true}, {-0.5, d, false}};
    case WaveformKind::Gaussian:
      return {};
  }
  return {};
}

// Coefficients of A(s) l in powers of u = 1/(c + s), through u^order.
std::vector<double> response_series(const RationalResponse& r, double c, int order) {
  const std::size_t dn = r.denominator.size() - 1;
  const std::size_t len = dn + 1 + static_cast<std::size_t>(order) + 1;
  // p(s) u^dn with s = (1 - c u)/u, as a polynomial in u
  auto in_u = [&](const std::vector<double>& p) {
    std::vector<double> out(len, 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
      std::vector<double> t{1.0};
      for (std::size_t j = 0; j < k; ++j) {
        std::vector<double> nt(t.size() + 1, 0.0);
        for (std::size_t i = 0; i < t.size(); ++i) {
          nt[i] += t[i];
          nt[i + 1] -= c * t[i];
        }
        t = std::move(nt);
      }
      for (std::size_t i = 0; i < t.size(); ++i) out[dn - k + i] += p[k] * t[i];
    }
    return out;
  };
  const auto num = in_u(r.numerator);
  const auto den = in_u(r.denominator);
  std::vector<double> q(static_cast<std::size_t>(order) + 1, 0.0);
  for (std::size_t n = 0; n < q.size(); ++n) {
    double acc = num[n];
    for (std::size_t k = 0; k < n; ++k) acc -= q[k] * den[n - k];
    q[n] = acc / den[0];
  }
  for (double& v : q) v *= r.scale;
  return q;
}

// Coefficients of exp(-sum a_k u^k), assuming a_0 = 0.
std::vector<double> exp_neg_series(const std::vector<double>& a) {
  std::vector<double> h(a.size(), 0.0);
  h[0] = 1.0;
  for (std::size_t n = 1; n < a.size(); ++n) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) acc -= static_cast<double>(k) * a[k] * h[n - k];
    h[n] = acc / static_cast<double>(n);
  }
  return h;
}

// Inverse transforms of 1/(rate + s) u^k and 1/(rate - s) u^k.
double causal_term(int k, double rate, double c, double tau) {
  if (tau < 0.0) return 0.0;
  if (k == 0) return tau == 0.0 ? 0.5 : std::exp(-rate * tau);
  const double d = c - rate;
  return std::exp(-rate * tau) * std::pow(d, -k) * boost::math::gamma_p(k, d * tau);
}

double anticausal_term(int k, double rate, double c, double tau) {
  if (k == 0) {
    if (tau > 0.0) return 0.0;
    return tau == 0.0 ? 0.5 : std::exp(rate * tau);
  }
  const double x = (c + rate) * std::max(tau, 0.0);
  return std::exp(rate * tau) * boost::math::gamma_q(k, x) * std::pow(c + rate, -k);
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  fftw_complex* data;
};

struct Attempt {
  std::vector<cplx> values;
  std::size_t fft_size = 0;
};

struct Setup {
  std::vector<Pole> poles;
  std::vector<double> h;  // exp(-A) coefficients in u
  double c = 1.0;
  double window = 0.0;
  double period = 0.0;
};

double smooth_part(const Setup& s, const PhotonWaveform& w, double tau) {
  if (s.poles.empty()) return time_amplitude(w, tau);
  double acc = 0.0;
  for (const auto& p : s.poles) {
    double inner = 0.0;
    for (std::size_t k = 0; k < s.h.size(); ++k) {
      const int ki = static_cast<int>(k);
      inner += s.h[k] * (p.causal ? causal_term(ki, p.rate, s.c, tau) : anticausal_term(ki, p.rate, s.c, tau));
    }
    acc += p.coef * inner;
  }
  return acc;
}

Attempt run_attempt(const Setup& s, const PhotonWaveform& w, const std::optional<AbsorberSpec>& a,
                    const TimeGrid& g, double window, double period, std::size_t min_samples) {
  Attempt out;
  out.values.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out.values[i] = smooth_part(s, w, g.at(i));
  if (!a) return out;

  const double h = g.spacing();
  const auto stride = static_cast<std::size_t>(std::ceil(h * window / std::numbers::pi));
  const double dt = h / static_cast<double>(stride);
  const auto needed = static_cast<std::size_t>(std::ceil(period / dt));
  const std::size_t n = std::max(min_samples, std::bit_ceil(needed));
  const double dnu = 2.0 * std::numbers::pi / (static_cast<double>(n) * dt);
  const double t0 = g.t_start();

  FftwBuffer buf(n);
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf.data, buf.data, FFTW_FORWARD, FFTW_ESTIMATE);
  if (plan == nullptr) throw NonConvergenceError("FFTW could not create a plan of size " + std::to_string(n));

  for (std::size_t j = 0; j < n; ++j) {
    const auto k = static_cast<std::ptrdiff_t>(j) - (j >= n / 2 ? static_cast<std::ptrdiff_t>(n) : 0);
    const double nu = static_cast<double>(k) * dnu;
    const cplx sv(0.0, -nu);
    const cplx b0 = spectral_amplitude(w, nu);
    const cplx H = std::exp(-spectral_response(*a, nu));
    cplx tail = 0.0;
    if (!s.poles.empty()) {
      const cplx u = 1.0 / (s.c + sv);
      for (std::size_t m = s.h.size(); m-- > 0;) tail = tail * u + s.h[m];
    } else {
      tail = 1.0;
    }
    const cplx r = b0 * (H - tail) * std::polar(1.0, -nu * t0) * (dnu / (2.0 * std::numbers::pi));
    buf.data[j][0] = r.real();
    buf.data[j][1] = r.imag();
  }
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::size_t idx = i * stride;
    out.values[i] += cplx(buf.data[idx][0], buf.data[idx][1]);
  }
  out.fft_size = n;
  return out;
}

double eit_delay_estimate(const AbsorberSpec& a) {
  const EitLine* l = a.eit_line();
  if (l == nullptr) return 0.0;
  const double w2 = l->omega * l->omega;
  const double d0 = w2 + l->gamma_m * l->width;
  return std::max(0.0, a.optical_depth() * (w2 - l->gamma_m * l->gamma_m) / (d0 * d0));
}

}  // namespace

TimeSeries propagate_numeric(const PhotonWaveform& w, const std::optional<AbsorberSpec>& a, const TimeGrid& g,
                             const NumericOptions& opts) {
  if (opts.asymptotic_order < 0 || opts.window_factor <= 0.0 || opts.tolerance <= 0.0 ||
      opts.max_refinements < 1 || opts.min_samples < 2) {
    throw ValidityError("numeric options out of range");
  }
  Setup s;
  s.poles = source_poles(w);

  double scale = w.delta_ph();
  double slow = w.delta_ph();
  if (a) {
    scale = std::max({scale, a->linewidth(), a->optical_depth()});
    slow = std::min(slow, a->linewidth());
    if (const EitLine* l = a->eit_line()) {
      scale = std::max(scale, l->omega);
      slow = std::min(slow, l->gamma_m);
    }
  }
  s.window = opts.window_factor * scale;
  s.period = (g.t_end() - g.t_start()) + 2.0 * 36.0 / slow + (a ? eit_delay_estimate(*a) : 0.0);

  if (!s.poles.empty()) {
    double c = w.delta_ph();
    if (a) {
      c = std::max({c, a->linewidth(), 0.5 * a->optical_depth()});
      if (const EitLine* l = a->eit_line()) c = std::max(c, l->omega);
      s.c = 2.0 * c;
      s.h = exp_neg_series(response_series(rational_response(*a), s.c, opts.asymptotic_order));
    } else {
      s.c = 2.0 * c;
      s.h = {1.0};
    }
  }

  TimeSeries ts{g, {}, Provenance::Numeric, w, a, std::nullopt, std::nullopt};
  NumericDiagnostics diag;
  diag.asymptotic_order = s.poles.empty() ? 0 : opts.asymptotic_order;

  Attempt prev = run_attempt(s, w, a, g, s.window, s.period, opts.min_samples);
  diag.fft_size = prev.fft_size;
  diag.window = s.window;
  diag.period = s.period;
  if (a) {
    bool converged = false;
    for (int r = 1; r <= opts.max_refinements; ++r) {
      const double factor = std::ldexp(1.0, r);
      Attempt next = run_attempt(s, w, a, g, s.window * factor, s.period * factor, opts.min_samples);
      double drift = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) drift = std::max(drift, std::abs(next.values[i] - prev.values[i]));
      prev = std::move(next);
      diag.refinements = r;
      diag.drift = drift;
      diag.fft_size = prev.fft_size;
      diag.window = s.window * factor;
      diag.period = s.period * factor;
      if (drift <= opts.tolerance) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      std::ostringstream msg;
      msg << "numeric propagation did not converge: drift " << diag.drift << " > " << opts.tolerance << " after "
          << opts.max_refinements << " refinements";
      throw NonConvergenceError(msg.str());
    }
  }
  ts.amplitude = std::move(prev.values);
  ts.diagnostics = diag;

  if (const auto z = g.zero_index()) {
    double jump = 0.0;
    for (const auto& p : s.poles) jump += p.causal ? p.coef : -p.coef;
    if (jump != 0.0) {
      const cplx mid = ts.amplitude[*z];
      ts.jump = Discontinuity{*z, mid - 0.5 * jump, mid + 0.5 * jump};
    }
  }
  return ts;
}

}  // namespace photonprop
