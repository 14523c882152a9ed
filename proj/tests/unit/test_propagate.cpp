#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "oracle.hpp"
#include "photonprop/errors.hpp"
#include "photonprop/propagate.hpp"
#include "photonprop/specfun.hpp"

using namespace photonprop;

namespace {

const PhotonWaveform kExp(WaveformKind::ExponentialCausal, 1.0);
const PhotonWaveform kSym(WaveformKind::SymmetricPart, 1.0);
const PhotonWaveform kAnti(WaveformKind::AntisymmetricPart, 1.0);
const AbsorberSpec kMatched = AbsorberSpec::matched(1.0, 10.0);
const AbsorberSpec kBroad = AbsorberSpec::broad(10.0, 10.0);
const AbsorberSpec kFig6 = AbsorberSpec::eit(10.0, 1.0, 20.0, 30.0);

// Largest |a - b| over samples farther than `guard` grid steps from tau = 0.
double max_dev(const TimeSeries& a, const TimeSeries& b, int guard = 2) {
  double worst = 0.0;
  const double h = a.grid.spacing();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a.tau(i)) <= guard * h * (1.0 + 1e-9)) continue;
    worst = std::max(worst, std::abs(a.amplitude[i] - b.amplitude[i]));
  }
  return worst;
}

double matched_oracle(double d, double t, double tau) {
  const double x = 2.0 * std::sqrt(t * d * tau);
  const double j0 = x < 60.0 ? oracle::bessel_j_series(0, x) : oracle::bessel_j_hankel(0, x);
  return std::exp(-d * tau) * j0;
}

}  // namespace

TEST_CASE("matched closed form against a Bessel series oracle") {
  for (double t : {0.5, 1.0, 10.0, 40.0}) {
    for (double tau = 0.01; tau < 8.0; tau += 0.0731) {
      const double want = matched_oracle(1.0, t, tau);
      CHECK(std::abs(analytic_matched(1.0, t, tau) - want) <= 1e-12);
    }
  }
  CHECK(analytic_matched(1.0, 10.0, 0.0, Side::Right) == 1.0);
  CHECK(analytic_matched(3.0, 200.0, 0.0, Side::Right) == 1.0);
  CHECK(analytic_matched(1.0, 10.0, 0.0, Side::Left) == 0.0);
  CHECK(analytic_matched(1.0, 10.0, 0.0) == 0.5);
  CHECK(analytic_matched(1.0, 10.0, -0.3) == 0.0);
  for (double tau : {0.1, 1.0, 3.0}) CHECK(analytic_matched(2.0, 0.0, tau) == doctest::Approx(std::exp(-2.0 * tau)).epsilon(1e-15));
}

TEST_CASE("matched output crosses zero where J0 does") {
  const double root = 2.404825557695773;
  const double tz = root * root / 40.0;
  CHECK(tz == doctest::Approx(0.14458).epsilon(1e-4));
  CHECK(std::abs(analytic_matched(1.0, 10.0, tz)) < 1e-14);
  CHECK(analytic_matched(1.0, 10.0, tz - 1e-3) > 0.0);
  CHECK(analytic_matched(1.0, 10.0, tz + 1e-3) < 0.0);
}

TEST_CASE("matched parts boundary values") {
  const double e5 = std::exp(-5.0) / 2.0;
  const auto left = analytic_parts_matched(1.0, 10.0, 0.0, Side::Left);
  const auto right = analytic_parts_matched(1.0, 10.0, 0.0, Side::Right);
  const auto mid = analytic_parts_matched(1.0, 10.0, 0.0);
  CHECK(left.symmetric == doctest::Approx(e5).epsilon(1e-14));
  CHECK(right.symmetric == doctest::Approx(e5).epsilon(1e-14));
  CHECK(left.antisymmetric == doctest::Approx(-e5).epsilon(1e-14));
  CHECK(right.antisymmetric == doctest::Approx(1.0 - e5).epsilon(1e-14));
  CHECK(right.antisymmetric == doctest::Approx(0.99663).epsilon(1e-5));
  CHECK(mid.antisymmetric == doctest::Approx(0.5 * (1.0 - std::exp(-5.0))).epsilon(1e-14));
  const auto near = analytic_parts_matched(1.0, 10.0, 1e-9);
  CHECK(near.symmetric == doctest::Approx(e5).epsilon(1e-6));
  CHECK(near.antisymmetric == doctest::Approx(1.0 - e5).epsilon(1e-6));
}

TEST_CASE("matched parts sum to the matched output") {
  for (double t : {0.3, 2.0, 10.0, 60.0}) {
    for (double tau = 0.003; tau < 6.0; tau += 0.0517) {
      const auto p = analytic_parts_matched(1.0, t, tau);
      CHECK(std::abs(p.total() - analytic_matched(1.0, t, tau)) <= 1e-9);
    }
    for (double tau : {-3.0, -0.5, -1e-6}) {
      CHECK(std::abs(analytic_parts_matched(1.0, t, tau).total()) <= 1e-15);
    }
  }
}

TEST_CASE("broad parts boundary values and precursor") {
  const double tp = 100.0 / 11.0;
  const auto mid = analytic_parts_broad(1.0, 10.0, 10.0, 0.0);
  CHECK(mid.antisymmetric == doctest::Approx(0.5 * (1.0 - std::exp(-tp))).epsilon(1e-14));
  const auto right = analytic_parts_broad(1.0, 10.0, 10.0, 0.0, Side::Right);
  const auto near = analytic_parts_broad(1.0, 10.0, 10.0, 1e-9);
  CHECK(std::abs(near.symmetric - right.symmetric) < 1e-6);
  CHECK(std::abs(near.antisymmetric - right.antisymmetric) < 1e-6);
  for (double tau : {-2.0, -0.5, -0.01}) {
    const auto p = analytic_parts_broad(1.0, 10.0, 10.0, tau);
    CHECK(p.symmetric == doctest::Approx(0.5 * std::exp(tau - tp)).epsilon(1e-14));
    CHECK(p.antisymmetric == doctest::Approx(-0.5 * std::exp(tau - tp)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(analytic_parts_broad(1.0, 1.0, 10.0, 0.5), ValidityError);
  CHECK_THROWS_AS(analytic_parts_broad(2.0, 1.0, 10.0, 0.5), ValidityError);
}

TEST_CASE("broad parts approach the matched parts as Gamma -> delta_ph") {
  for (double tau : {0.05, 0.3, 1.0, 2.5}) {
    const auto b = analytic_parts_broad(1.0, 1.0 + 1e-7, 4.0, tau);
    const auto m = analytic_parts_matched(1.0, 4.0, tau);
    CHECK(std::abs(b.symmetric - m.symmetric) < 1e-5);
    CHECK(std::abs(b.antisymmetric - m.antisymmetric) < 1e-5);
  }
}

TEST_CASE("two-term broad approximation") {
  CHECK(approx_broad(1.0, 10.0, 100.0, 0.0, Side::Right) == 1.0);
  CHECK(approx_broad(1.0, 10.0, 100.0, 0.0) == 0.5);
  CHECK(approx_broad(1.0, 10.0, 100.0, -1.0) == 0.0);
  for (double tau : {1e-4, 0.05, 0.4, 1.5}) {
    const double a1 = approx_broad(1.0, 10.0, 100.0, tau);
    const double a2 = approx_broad(0.1, 10.0, 100.0, tau);
    const double x = 2.0 * std::sqrt(100.0 * tau);
    const double j1x = oracle::bessel_j_series(1, x) / x;
    CHECK(std::abs((a2 - a1) - std::exp(-10.0 * tau) * 0.9 * tau * 2.0 * j1x) < 1e-13);
  }
  const double tiny = 1e-12;
  CHECK(approx_broad(1.0, 10.0, 100.0, tiny) == doctest::Approx(std::exp(-10.0 * tiny) * (1.0 - 100.0 * tiny + 9.0 * tiny)).epsilon(1e-12));

  const TimeGrid g(-1.0, 5.0, 601);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double tau = g.at(i);
    worst = std::max(worst, std::abs(approx_broad(1.0, 10.0, 100.0, tau) - analytic_parts_broad(1.0, 10.0, 10.0, tau).total()));
  }
  MESSAGE("approx vs parts worst " << worst);
  CHECK(worst <= 0.05);
}

TEST_CASE("numeric propagator without a medium reproduces the input") {
  const TimeGrid g(-1.0, 5.0, 601);
  for (auto k : {WaveformKind::ExponentialCausal, WaveformKind::SymmetricPart, WaveformKind::AntisymmetricPart,
                 WaveformKind::Gaussian}) {
    const PhotonWaveform w(k, 1.3);
    const auto num = propagate_numeric(w, std::nullopt, g);
    CHECK(max_dev(num, sample(w, g), 0) <= 1e-12);
    const auto zero = propagate_numeric(w, AbsorberSpec::broad(10.0, 0.0), g);
    CHECK(max_dev(zero, sample(w, g)) <= 1e-4);
  }
}

TEST_CASE("numeric propagator through a matched line") {
  const TimeGrid g(-1.0, 5.0, 601);
  const auto num = propagate_numeric(kExp, kMatched, g);
  const auto ana = propagate_analytic(Provenance::AnalyticMatched, kExp, kMatched, g);
  const double dev = max_dev(num, ana);
  MESSAGE("numeric vs matched " << dev);
  CHECK(dev <= 1e-4);
  REQUIRE(num.jump.has_value());
  CHECK(std::abs(num.jump->right - num.jump->left - 1.0) < 1e-12);

  const auto sym = propagate_numeric(kSym, kMatched, g);
  const std::size_t z = *g.zero_index();
  CHECK(std::abs(sym.amplitude[z] - std::exp(-5.0) / 2.0) <= 1e-4);
  CHECK(std::exp(-5.0) / 2.0 == doctest::Approx(0.0033690).epsilon(1e-4));
}

TEST_CASE("numeric propagator through a broad line") {
  const TimeGrid g(-0.2, 2.0, 2201);
  const auto num = propagate_numeric(kExp, kBroad, g);
  const auto ana = propagate_analytic(Provenance::AnalyticParts, kExp, kBroad, g);
  const double dev = max_dev(num, ana);
  MESSAGE("numeric vs broad parts " << dev);
  CHECK(dev <= 1e-4);

  const auto sym = propagate_numeric(kSym, kBroad, g);
  const double tp = 100.0 / 11.0;
  for (std::size_t i = 0; g.at(i) < -0.01; i += 20) {
    CHECK(std::abs(sym.amplitude[i].real() - 0.5 * std::exp(g.at(i) - tp)) <= 1e-4);
  }
}

TEST_CASE("linearity of the numeric propagator") {
  NumericOptions one_step;
  one_step.tolerance = 1.0;
  one_step.max_refinements = 1;
  const TimeGrid g(-1.0, 6.0, 701);
  for (const auto& a : {kMatched, kBroad, kFig6}) {
    const auto e = propagate_numeric(kExp, a, g, one_step);
    const auto s = propagate_numeric(kSym, a, g, one_step);
    const auto n = propagate_numeric(kAnti, a, g, one_step);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(s.amplitude[i] + n.amplitude[i] - e.amplitude[i]));
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("causality and no gain") {
  const TimeGrid g(-2.0, 6.0, 801);
  const double h = g.spacing();
  for (const auto& a : {kMatched, kBroad, kFig6, AbsorberSpec::matched(1.0, 100.0)}) {
    const auto out = propagate_numeric(kExp, a, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g.at(i) < -2.0 * h) CHECK(std::abs(out.amplitude[i]) <= 1e-4);
      CHECK(std::abs(out.amplitude[i]) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("adiabatic EIT limits") {
  const EitParams p = eit_params(kFig6);
  const double slow = 0.1;
  for (double x : {10.0, 20.0, 40.0}) {
    const double tau = p.t_d + x / p.delta_eff;
    const double beer = std::exp(-p.t_eit - slow * (tau - p.t_d));
    CHECK(adiabatic_eit(slow, kFig6, tau) / beer == doctest::Approx(1.0).epsilon(1e-3));
  }
  CHECK(std::abs(adiabatic_eit(1.0, kFig6, p.t_d - 6.0 / p.delta_eff)) <= 1e-4);
  CHECK(std::abs(adiabatic_eit(1.0, kFig6, -1.0)) <= 1e-8);

  const double fast = 1000.0;
  const double peak = adiabatic_eit(fast, kFig6, p.t_d);
  for (double x : {-2.0, -1.0, 1.0, 2.0}) {
    const double tau = p.t_d + x / p.delta_eff;
    CHECK(adiabatic_eit(fast, kFig6, tau) / peak == doctest::Approx(std::exp(-0.25 * x * x)).epsilon(2e-2));
  }
}

TEST_CASE("phi functions") {
  CHECK(phi_plus(0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(phi_plus(0.1, 50.0) == doctest::Approx(std::exp(0.01)).epsilon(1e-12));
  CHECK(phi_plus(0.1, -50.0) < 1e-100);
  for (double r : {0.0, 0.1, 1.0}) {
    for (double x : {-3.0, -0.5, 0.0, 0.7, 4.0}) {
      const double want = 0.5 * std::exp(r * r) * (1.0 - oracle::erf_series(r - 0.5 * x));
      CHECK(phi_plus(r, x) == doctest::Approx(want).epsilon(1e-12));
      CHECK(phi_minus(r, x) == doctest::Approx(phi_plus(r, -x)).epsilon(1e-15));
    }
  }
}

TEST_CASE("simplified adiabatic form stays close to the full form") {
  const TimeGrid g(-1.0, 6.0, 1401);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    worst = std::max(worst, std::abs(adiabatic_eit(1.0, kFig6, g.at(i), true) - adiabatic_eit(1.0, kFig6, g.at(i))));
  }
  const EitParams p = eit_params(kFig6);
  MESSAGE("simplified vs full " << worst);
  CHECK(worst <= std::exp(std::abs(p.t_eit - p.t_d)) - 1.0);
  CHECK(worst <= 0.05);
}

TEST_CASE("delay-only reference") {
  const EitParams p = eit_params(kFig6);
  CHECK(eit_delay_only(1.0, kFig6, p.t_d - 1e-3) == 0.0);
  CHECK(eit_delay_only(1.0, kFig6, p.t_d + 1.0) == doctest::Approx(std::exp(-1.0 - p.t_eit)).epsilon(1e-14));
}

TEST_CASE("total EIT output near the spike") {
  const TimeGrid g(-1.0, 6.0, 1401);
  const auto anti = total_eit(kAnti, kFig6, g);
  const auto sym = total_eit(kSym, kFig6, g);
  const auto exp = total_eit(kExp, kFig6, g);
  REQUIRE(anti.jump.has_value());
  REQUIRE(exp.jump.has_value());
  CHECK(std::abs(exp.jump->right.real() - 1.0) < 1e-3);
  CHECK(std::abs(anti.jump->right - anti.jump->left) > 0.99);
  const double sym_jump = sym.jump ? std::abs(sym.jump->right - sym.jump->left) : 0.0;
  CHECK(sym_jump < 1e-12);

  const PhotonWaveform wide(WaveformKind::ExponentialCausal, 10.0);
  const auto a = total_eit(kExp, kFig6, g);
  const auto b = total_eit(wide, kFig6, g);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double tau = g.at(i);
    if (tau <= 0.0 || tau > 0.05) continue;
    const double fa = a.amplitude[i].real() - adiabatic_eit(1.0, kFig6, tau);
    const double fb = b.amplitude[i].real() - adiabatic_eit(10.0, kFig6, tau);
    worst = std::max(worst, std::abs(fa - fb));
  }
  MESSAGE("fast parts for delta_ph = 1 and 10 differ by " << worst);
  CHECK(worst < 0.05);
}

TEST_CASE("nonadiabatic spike shortens with optical depth") {
  auto first_zero = [](const AbsorberSpec& a) {
    for (double tau = 1e-5;; tau += 1e-5) {
      const double fast = analytic_parts_broad(1.0, a.linewidth(), a.thickness(), tau).total();
      if (fast < 0.0) return tau;
    }
  };
  const double z30 = first_zero(kFig6);
  const double z60 = first_zero(kFig6.with_thickness(60.0));
  const double z120 = first_zero(kFig6.with_thickness(120.0));
  CHECK(z30 * 300.0 == doctest::Approx(z60 * 600.0).epsilon(0.15));
  CHECK(z60 * 600.0 == doctest::Approx(z120 * 1200.0).epsilon(0.15));
}

TEST_CASE("gaussian through a broad line") {
  const PhotonWaveform g1(WaveformKind::Gaussian, 1.0);
  for (double tau : {-1.0, 0.0, 0.8}) CHECK(gaussian_broad(1.0, 20.0, 0.0, tau) == doctest::Approx(std::exp(-0.25 * tau * tau)).epsilon(1e-15));
  CHECK_THROWS_AS(gaussian_broad(1.0, 2.0, 4.0, 0.0), ValidityError);
  CHECK_THROWS_AS(gaussian_broad(1.0, 2.0, 5.0, 0.0), ValidityError);
  const double beer = gaussian_broad(1e-4, 20.0, 3.0, -0.15) / std::exp(-3.0);
  CHECK(beer == doctest::Approx(1.0).epsilon(1e-8));

  const AbsorberSpec a = AbsorberSpec::broad(20.0, 2.0);
  const TimeGrid g(-8.0, 8.0, 801);
  const auto num = propagate_numeric(g1, a, g);
  const auto ana = propagate_analytic(Provenance::GaussianApprox, g1, a, g);
  const double dev = max_dev(num, ana, 0);
  MESSAGE("gaussian approx vs numeric " << dev);
  CHECK(dev <= 1e-2);
  CHECK_THROWS_AS(total_eit(g1, kFig6, g), UnsupportedError);
}

TEST_CASE("method preconditions") {
  const PhotonWaveform g1(WaveformKind::Gaussian, 1.0);
  CHECK_FALSE(method_precondition(Provenance::AnalyticParts, kExp, kBroad));
  CHECK(method_precondition(Provenance::AnalyticParts, kExp, AbsorberSpec::broad(1.0, 3.0)));
  CHECK(method_precondition(Provenance::AnalyticMatched, kExp, AbsorberSpec::matched(2.0, 3.0)));
  CHECK(method_precondition(Provenance::AdiabaticEit, kExp, AbsorberSpec::eit(10.0, 1.0, 3.0, 30.0)));
  CHECK(method_precondition(Provenance::TotalEit, g1, kFig6));
  CHECK(method_precondition(Provenance::GaussianApprox, g1, AbsorberSpec::broad(2.0, 4.0)));
  CHECK_FALSE(method_precondition(Provenance::FreeSpace, g1, std::nullopt));
  const TimeGrid g(-1.0, 2.0, 31);
  CHECK_THROWS_AS(propagate_analytic(Provenance::AnalyticParts, kExp, AbsorberSpec::broad(1.0, 3.0), g), ValidityError);
  const auto fs = propagate(Provenance::FreeSpace, kExp, std::nullopt, g);
  CHECK(fs.provenance == Provenance::FreeSpace);
}
