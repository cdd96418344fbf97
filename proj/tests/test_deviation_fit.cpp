#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bmlab/deviation.hpp"
#include "bmlab/errors.hpp"
#include "bmlab/fit.hpp"

using namespace bmlab;
using namespace bmlab::deviation;
using analytic::SignalKind;
using analytic::SignalModel;
using std::numbers::pi;

namespace {

units::ScaledConfig paper_trap(long N, double ratio_a11 = 1.03, double ratio_a22 = 0.97) {
  auto cfg = units::to_internal_units(
      units::make_config(units::rb87_mass_amu, 350.0, 3.5, 100.0, ratio_a11, ratio_a22, 2));
  cfg.N = N;
  return cfg;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = a + (b - a) * static_cast<double>(i) / (n - 1);
  return t;
}

// Plain scan for the first upward crossing after t = 0, bisected to the end.
double scan_period(const SignalModel& m) {
  const double h = 2 * pi / std::abs(m.omega()) / 1e5;
  double t = h;
  while (!(m(t) < 0.0 && m(t + h) >= 0.0)) t += h;
  double a = t, b = t + h;
  for (int i = 0; i < 200; ++i) {
    const double c = 0.5 * (a + b);
    (m(c) < 0.0 ? a : b) = c;
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("period_tau") {
  SUBCASE("sinusoid") {
    for (double omega : {0.37, 2.0, 1e-3}) {
      const auto m = SignalModel::sinusoid(omega, 1.0, 1.0);
      CHECK(std::abs(period_tau(m) * omega / (2 * pi) - 1.0) < 1e-8);
    }
  }
  SUBCASE("uniform profile") {
    const double w = 4.0, omega = 0.5;
    const auto rule = composite_gauss_legendre(-w / 2, w / 2, 4);
    const std::vector<double> q(rule.size(), 1 / w);
    const auto m = SignalModel::phase_integral(SignalKind::T2, omega, 1.0, 1 / w, rule, q);
    CHECK(std::abs(period_tau(m) * omega / (2 * pi) - 1.0) < 1e-8);
  }
  SUBCASE("paper trap") {
    const auto cfg = paper_trap(1000);
    for (auto kind : {SignalKind::T1, SignalKind::T2, SignalKind::T3}) {
      const auto m = analytic::build_signal_model(cfg, kind);
      const double tau = period_tau(m);
      CHECK(std::abs(tau * std::abs(m.omega()) / (2 * pi) - 1.0) < 0.2);
      CHECK(std::abs(tau / scan_period(m) - 1.0) < 1e-8);
    }
  }
  SUBCASE("failures") {
    CHECK_THROWS_AS(period_tau(SignalModel::sinusoid(0.0, 1.0, 1.0)), ContractError);
    // A flat top never comes back within a window shorter than one period.
    CHECK_THROWS_AS(period_tau(SignalModel::sinusoid(1.0, 1.0, 1.0), 0.9), ContractError);
  }
}

TEST_CASE("rms_deviation") {
  const auto m = SignalModel::sinusoid(0.7, 1.0, 1.0);
  const double tau = 2 * pi / 0.7;
  const auto t = linspace(0.0, tau, 20001);

  SUBCASE("identity") {
    const auto data = fit::synthesize(m, t);
    CHECK(rms_deviation(data, m, tau) == 0.0);
  }
  SUBCASE("constant offset") {
    auto data = fit::synthesize(m, t);
    for (double& y : data.y) y += -0.25;
    CHECK(rms_deviation(data, m, tau) == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("zero data against a sinusoid") {
    TimeSeries data{t, std::vector<double>(t.size(), 0.0)};
    CHECK(std::abs(rms_deviation(data, m, tau) - 1 / std::sqrt(2.0)) < 1e-3);
  }
  SUBCASE("only samples up to tau count") {
    auto long_t = linspace(0.0, 2 * tau, 40001);
    auto data = fit::synthesize(m, long_t);
    for (std::size_t i = 0; i < data.size(); ++i)
      if (data.t[i] > tau * (1 + 1e-9)) data.y[i] += 5.0;
    CHECK(rms_deviation(data, m, tau) < 1e-12);
  }
  SUBCASE("shift invariance") {
    auto data = fit::synthesize(SignalModel::sinusoid(0.75, 1.0, 1.0), t);
    auto model = m.evaluate(t);
    const double before = rms_deviation(data, model, tau);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double shift = std::cos(3 * t[i]) + t[i] * t[i];
      data.y[i] += shift;
      model[i] += shift;
    }
    CHECK(rms_deviation(data, model, tau) == doctest::Approx(before).epsilon(1e-10));
  }
  SUBCASE("contract errors") {
    CHECK_THROWS_AS(rms_deviation(TimeSeries{}, m, tau), ContractError);
    const auto short_data = fit::synthesize(m, linspace(0.0, tau / 2, 100));
    CHECK_THROWS_AS(rms_deviation(short_data, m, tau), ContractError);
  }
}

TEST_CASE("wavefunction_rms_deviation") {
  const auto grid = Grid1D::symmetric(10.0, 256);
  Density1D a{grid, {}}, b{grid, {}};
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double z = grid.coord(i);
    a.values.push_back(std::exp(-z * z) / std::sqrt(pi));
    b.values.push_back(std::exp(-z * z / 4) / std::sqrt(4 * pi));
  }
  CHECK(wavefunction_rms_deviation(a, a) == 0.0);
  CHECK(wavefunction_rms_deviation(a, b) == wavefunction_rms_deviation(b, a));

  double acc = 0.0;
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double d = std::sqrt(a.values[i]) - std::sqrt(b.values[i]);
    acc += d * d;
  }
  CHECK(wavefunction_rms_deviation(a, b) == doctest::Approx(std::sqrt(acc / grid.n)).epsilon(1e-14));

  Density1D c{Grid1D::symmetric(10.0, 128), std::vector<double>(128, 0.0)};
  CHECK_THROWS_AS(wavefunction_rms_deviation(a, c), ContractError);
}

TEST_CASE("sweep with symmetric couplings") {
  units::ScaledConfig cfg;
  cfg.lambda = 0.1;
  cfg.a11 = cfg.a22 = cfg.a12 = 0.00918;
  cfg.N = 300;
  cfg.mass = units::rb87_mass_amu * units::atomic_mass_unit;
  cfg.omega_T = 2 * pi * 350.0;

  SweepSettings s;
  s.grid = Grid3D::make(7.0, 32, 32.0, 64);
  s.dt = 0.01;
  s.sample_every = 20;
  const std::vector<long> N_list{200, 300};
  const auto rows = sweep_deviations(cfg, N_list, s);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.error.empty());
    CHECK(row.omega1 == 0.0);
    CHECK(row.D1 < 1e-10);
    CHECK(row.D2 < 1e-10);
    CHECK(row.D3 < 1e-10);
    CHECK(row.tau > 0.0);
  }
  CHECK(rows[0].N == 200);
  CHECK(rows[1].N == 300);
  CHECK_THROWS_AS(sweep_deviations(cfg, {}, s), ContractError);
}

TEST_CASE("fit_parameter") {
  auto truth = paper_trap(1000);
  const double a22_true = truth.a22;
  const auto model = analytic::build_signal_model(truth, SignalKind::T3);
  const double tau = period_tau(model);
  const auto clean = fit::synthesize(model, linspace(0.0, 1.2 * tau, 400));

  auto blind = truth;
  blind.a22 = truth.a12;

  SUBCASE("noiseless recovery") {
    const auto r = fit::fit_parameter(clean, SignalKind::T3, blind);
    CHECK(r.converged);
    CHECK_FALSE(r.at_boundary);
    CHECK(std::abs(r.a22_hat / a22_true - 1.0) < 1e-6);
    CHECK(r.sse < 1e-12);
    CHECK(r.sse >= 0.0);
    CHECK(std::abs(fit::objective(clean, SignalKind::T3, blind, r.a22_hat) - r.sse) <= 1e-12);
    CHECK(r.gamma1_hat == doctest::Approx(truth.gamma1()).epsilon(1e-5));
    CHECK(r.a22_hat_si == doctest::Approx(r.a22_hat * truth.length_unit()).epsilon(1e-15));

    // Only the true value fits: every scan point away from it is far off.
    const double step = (1.5 - 0.5) * truth.a12 / 100;
    for (const auto& trial : r.history)
      if (std::abs(trial.a22 - a22_true) > step) CHECK(trial.sse > 1e-6);
  }
  SUBCASE("one percent noise") {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto noisy = fit::add_noise(clean, 0.01, seed);
      const auto r = fit::fit_parameter(noisy, SignalKind::T3, blind);
      CHECK(r.converged);
      CHECK(std::abs(fit::objective(noisy, SignalKind::T3, blind, r.a22_hat) - r.sse) <=
            1e-12 * std::max(1.0, r.sse));
      worst = std::max(worst, std::abs(r.a22_hat / a22_true - 1.0));
    }
    CHECK(worst < 0.01);
  }
  SUBCASE("noise is reproducible") {
    const auto a = fit::add_noise(clean, 0.01, 7);
    const auto b = fit::add_noise(clean, 0.01, 7);
    const auto c = fit::add_noise(clean, 0.01, 8);
    CHECK(a.y == b.y);
    CHECK(a.y != c.y);
    CHECK(fit::add_noise(clean, 0.0, 7).y == clean.y);
  }
  SUBCASE("minimum outside the bracket is flagged") {
    auto low = truth;
    low.a22 = 0.48 * truth.a12;
    const auto low_model = analytic::build_signal_model(low, SignalKind::T1);
    const auto data = fit::synthesize(low_model, linspace(0.0, 1.2 * period_tau(low_model), 400));
    const auto r = fit::fit_parameter(data, SignalKind::T1, blind);
    CHECK(r.at_boundary);
    CHECK(r.a22_hat == doctest::Approx(0.5 * truth.a12).epsilon(1e-6));
  }
  SUBCASE("contract errors") {
    CHECK_THROWS_AS(fit::fit_parameter(TimeSeries{}, SignalKind::T3, blind), ContractError);
    fit::FitSettings s;
    s.bracket_hi = 0.4;
    CHECK_THROWS_AS(fit::fit_parameter(clean, SignalKind::T3, blind, s), ContractError);
  }
}
