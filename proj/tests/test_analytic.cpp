#include <doctest.h>

#include <boost/math/special_functions/laguerre.hpp>

#include <cmath>
#include <numbers>

#include "bmlab/analytic.hpp"
#include "bmlab/errors.hpp"
#include "bmlab/units.hpp"

using namespace bmlab;
using namespace bmlab::analytic;
using std::numbers::pi;

namespace {

units::ScaledConfig paper_trap(long N, double ratio_a11 = 1.03, double ratio_a22 = 0.97) {
  auto cfg = units::to_internal_units(
      units::make_config(units::rb87_mass_amu, 350.0, 3.5, 100.0, ratio_a11, ratio_a22, 2));
  cfg.N = N;
  return cfg;
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

double slope_at_zero(const SignalModel& m) {
  const double h = 1e-4 / std::abs(m.omega());
  return (m(h) - m(-h)) / (2 * h);
}

}  // namespace

TEST_CASE("eta_T_gaussian") {
  CHECK(close(eta_T_gaussian(1.0), 1 / (4 * pi), 1e-15));
  CHECK(close(eta_T_gaussian(2.0), eta_T_gaussian(1.0) / 4, 1e-15));
  CHECK(close(eta_T_internal(), 1 / (2 * pi), 1e-15));

  // SI: eta_T = m omega_T / (2 pi hbar) against quadrature of |chi0|^4 with
  // chi0 = exp(-rho^2 / 2 lT^2) / (sqrt(pi) lT).
  const auto cfg = units::make_config(units::rb87_mass_amu, 350.0, 3.5, 100.0, 1.03, 0.97, 1000);
  const auto d = units::derive_couplings(cfg);
  const double closed = cfg.mass * cfg.omega_T / (2 * pi * units::hbar);
  CHECK(close(eta_T_gaussian(d.rho0), closed, 1e-12));
  const double lT = d.lT;
  const double quad = lT * lT * radial_rule().integrate([&](double u) {
    const double chi = std::exp(-u * u / 2) / (std::sqrt(pi) * lT);
    return chi * chi * chi * chi;
  });
  CHECK(close(quad, closed, 1e-12));
}

TEST_CASE("Gamma_T") {
  const double eta = eta_T_internal();
  CHECK(close(gamma_T_cigar(eta, 1.0) / (eta * eta / 2), std::log(4.0 / 3.0), 1e-15));
  CHECK(std::log(4.0 / 3.0) == doctest::Approx(0.2876821).epsilon(1e-7));
  CHECK(close(gamma_T_series(eta, 1.0, 40), gamma_T_cigar(eta, 1.0), 1e-10));

  // eta_T grows linearly with omega_T, so Gamma_T does too.
  const double m = units::rb87_mass_amu * units::atomic_mass_unit;
  auto gamma_si = [&](double omega) {
    const double eta_si = m * omega / (2 * pi * units::hbar);
    return gamma_T_cigar(eta_si, units::hbar * omega);
  };
  const double w = 2 * pi * 350.0;
  CHECK(close(gamma_si(2 * w), 2 * gamma_si(w), 1e-14));
}

TEST_CASE("radial oscillator basis") {
  for (int n = 0; n <= 12; ++n)
    for (double x : {0.0, 0.3, 1.7, 5.0, 11.0})
      CHECK(close(laguerre(n, x) + 2.0, boost::math::laguerre(n, x) + 2.0, 1e-12));

  const auto rule = radial_rule();
  for (int n = 0; n <= 6; ++n)
    for (int m = 0; m <= 6; ++m) {
      const double s = rule.integrate([&](double r) { return xi(n, r) * xi(m, r); });
      CHECK(std::abs(s - (n == m ? 1.0 : 0.0)) < 1e-12);
    }

  // <xi_n | xi_0^3> = eta_T / 2^n.
  const double eta = eta_T_internal();
  for (int n = 1; n <= 10; ++n) {
    const double s = rule.integrate([&](double r) { return xi(n, r) * std::pow(xi(0, r), 3); });
    CHECK(close(s, eta / std::pow(2.0, n), 1e-10));
  }
  CHECK(close(rule.integrate([](double r) { return std::pow(xi(0, r), 4); }), eta, 1e-12));
}

TEST_CASE("chi01_series") {
  const double eta_T = eta_T_internal();
  SUBCASE("single atom") {
    const auto cfg = paper_trap(1);
    const auto t = chi01_series(cfg, eta_T, 0.01);
    CHECK(t.prefactor == 0.0);
    for (double v : t.chi01) CHECK(v == 0.0);
  }
  SUBCASE("expansion coefficients") {
    const auto cfg = paper_trap(1000);
    const double eta_L = eta_L_tf(thomas_fermi(cfg, eta_T));
    const auto t = chi01_series(cfg, eta_T, eta_L);
    CHECK(close(t.prefactor, -(999 * cfg.g11() * eta_T * eta_L) / 2, 1e-14));
    double norm = 0.0, proj0 = 0.0;
    for (std::size_t i = 0; i < t.rule.size(); ++i) {
      norm += t.rule.w[i] * t.chi01[i] * t.chi01[i];
      proj0 += t.rule.w[i] * t.chi01[i] * xi(0, t.rule.x[i]);
    }
    CHECK(std::abs(proj0) < 1e-12 * std::sqrt(norm));
    for (int n = 1; n <= 5; ++n) {
      double proj = 0.0;
      for (std::size_t i = 0; i < t.rule.size(); ++i)
        proj += t.rule.w[i] * t.chi01[i] * xi(n, t.rule.x[i]);
      CHECK(close(proj, t.prefactor / (std::pow(2.0, n) * n), 1e-10));
    }
    CHECK(t.chi01_at(0.4) == doctest::Approx(t.prefactor * [] {
                               double s = 0.0;
                               for (int n = 1; n <= 60; ++n)
                                 s += xi(n, 0.4) / (std::pow(2.0, n) * n);
                               return s;
                             }()).epsilon(1e-6));
  }
}

TEST_CASE("Thomas-Fermi profile") {
  const double eta_T = eta_T_internal();
  const auto cfg = paper_trap(1000);
  const auto tf = thomas_fermi(cfg, eta_T, Grid1D::symmetric(120.0, 4096));

  const double c = 999 * cfg.g11() * eta_T;
  CHECK(close(tf.z_N, std::cbrt(3 * c / (2 * cfg.lambda * cfg.lambda)), 1e-14));
  CHECK(close(tf.mu_L, cfg.lambda * cfg.lambda * tf.z_N * tf.z_N / 2, 1e-14));
  CHECK(tf.density(tf.z_N) == 0.0);
  CHECK(tf.density(-tf.z_N) == 0.0);
  CHECK(tf.density(1.1 * tf.z_N) == 0.0);
  CHECK(close(tf.density(0.0) * tf.z_N, 0.75, 1e-14));
  for (double v : tf.q0) CHECK(v >= 0.0);

  const auto rule = tf.support_rule();
  CHECK(std::abs(rule.integrate([&](double z) { return tf.density(z); }) - 1.0) < 1e-10);
  CHECK(close(eta_L_tf(tf) * tf.z_N, 0.6, 1e-14));
  const double quad = rule.integrate([&](double z) { return std::pow(tf.density(z), 2); });
  CHECK(close(quad, eta_L_tf(tf), 1e-10));

  // Cube-root law: N - 1 -> 8 (N - 1) doubles z_N and halves eta_L.
  const auto big = thomas_fermi(paper_trap(7993), eta_T);
  CHECK(close(big.z_N / tf.z_N, 2.0, 1e-12));
  CHECK(close(eta_L_tf(big) / eta_L_tf(tf), 0.5, 1e-12));
  const auto n8 = thomas_fermi(paper_trap(80000), eta_T);
  const auto n1 = thomas_fermi(paper_trap(10000), eta_T);
  CHECK(std::abs(n8.z_N / n1.z_N - 2.0) < 1e-3);

  CHECK(close(eta_L_tf(tf) / eta_L_printed(cfg), std::cbrt(2.0), 1e-12));

  CHECK_THROWS_AS(thomas_fermi(cfg, eta_T, Grid1D::symmetric(1.1 * tf.z_N, 1024)), ContractError);
}

TEST_CASE("signal T1") {
  const double omega = 0.37;
  CHECK(signal_T1(omega, 0.0) == 0.0);
  CHECK(signal_T1(omega, pi / (2 * omega)) == doctest::Approx(1.0).epsilon(1e-15));
  const double period = 2 * pi / omega;
  CHECK(signal_T1(omega, period + 0.1) == doctest::Approx(signal_T1(omega, 0.1)).epsilon(1e-12));
  CHECK(signal_T1(omega, 0.5 * period + 1e-6) < 0.0);
}

TEST_CASE("signal T2") {
  SUBCASE("uniform profile is a sinusoid") {
    const double w = 3.0, omega = 0.8;
    const auto rule = composite_gauss_legendre(-w / 2, w / 2, 4);
    const std::vector<double> q(rule.size(), 1 / w);
    const auto m = SignalModel::phase_integral(SignalKind::T2, omega, 1.0, 1 / w, rule, q);
    for (double t : {0.0, 0.3, 1.9, 7.0})
      CHECK(std::abs(m(t) - std::sin(omega * t)) < 1e-13);
    CHECK_THROWS_AS(SignalModel::phase_integral(SignalKind::T2, omega, 1.0, 1.01 / w, rule, q),
                    ContractError);
  }
  SUBCASE("paper trap") {
    const auto cfg = paper_trap(1000);
    const auto m = build_signal_model(cfg, SignalKind::T2);
    const double eta_T = eta_T_internal();
    const double eta_L = eta_L_tf(thomas_fermi(cfg, eta_T));
    CHECK(close(m.omega(), 999 * eta_T * eta_L * cfg.gamma1(), 1e-14));
    CHECK(close(m.omega(), omega_N(cfg, eta_T, eta_L), 1e-15));
    CHECK(m(0.0) == 0.0);
    CHECK(close(slope_at_zero(m), m.omega(), 1e-6));
  }
}

TEST_CASE("perturbed profile") {
  const double eta_T = eta_T_internal();
  const double gamma = gamma_T_cigar(eta_T, 1.0);

  SUBCASE("correction-free limit") {
    const auto cfg = paper_trap(1000);
    const auto tf = thomas_fermi(cfg, eta_T);
    const auto p = perturbed_profile(cfg, eta_T, 1e-8 * gamma);
    double worst = 0.0;
    for (int i = -200; i <= 200; ++i) {
      const double z = 1.2 * tf.z_N * i / 200.0;
      worst = std::max(worst, std::abs(p.density(z) - tf.density(z)));
    }
    CHECK(worst < 1e-5);
    CHECK(close(p.mu_tilde, tf.mu_L, 1e-6));
  }
  SUBCASE("paper trap narrows the profile") {
    for (long N : {1000L, 3000L}) {
      CAPTURE(N);
      const auto cfg = paper_trap(N);
      const auto tf = thomas_fermi(cfg, eta_T);
      const auto p = perturbed_profile(cfg, eta_T, gamma, Grid1D::symmetric(1.5 * tf.z_N, 2048));
      CHECK(p.norm_residual < 1e-10);
      CHECK(p.gamma_T > 0.0);
      CHECK(p.z_edge < tf.z_N);
      CHECK(p.mu1 < 0.0);
      CHECK(p.density(0.0) > tf.density(0.0));
      for (double v : p.phi0_sq) CHECK(v >= 0.0);
      const auto t = chi01_series(cfg, eta_T, eta_L_tf(tf));
      const auto etas = corrected_etas(p, t);
      CHECK(etas.eta_L > eta_L_tf(tf));
    }
  }
  SUBCASE("breakdown at large N") {
    try {
      perturbed_profile(paper_trap(20000), eta_T, gamma);
      FAIL("expected PerturbationBreakdown");
    } catch (const PerturbationBreakdown& e) {
      CHECK(e.atom_count() == 20000);
      CHECK(std::string(e.what()).find("20000") != std::string::npos);
    }
  }
}

TEST_CASE("corrected etas") {
  const double eta_T = eta_T_internal();
  const auto cfg = paper_trap(1000);
  const auto tf = thomas_fermi(cfg, eta_T);

  SUBCASE("uncorrected limit") {
    const auto m = build_signal_model(cfg, SignalKind::T3, 0.0);
    CHECK(close(m.eta_T(), 1 / (2 * pi), 1e-12));
    CHECK(close(m.eta_L(), 3 / (5 * tf.z_N), 1e-12));
  }
  SUBCASE("quadrature refinement") {
    const auto p = perturbed_profile(cfg, eta_T, gamma_T_cigar(eta_T, 1.0));
    const auto coarse = corrected_etas(p, chi01_series(cfg, eta_T, eta_L_tf(tf), radial_rule(16, 64)));
    const auto fine = corrected_etas(p, chi01_series(cfg, eta_T, eta_L_tf(tf), radial_rule(20, 128)));
    CHECK(close(fine.eta_T, coarse.eta_T, 1e-8));
    const double eta_L_fine = p.support_rule(256).integrate([&](double z) {
      return std::pow(p.density(z), 2);
    });
    CHECK(close(eta_L_fine, coarse.eta_L, 1e-8));
  }
}

TEST_CASE("signal T3") {
  const auto cfg = paper_trap(1000);
  const auto t2 = build_signal_model(cfg, SignalKind::T2);
  const auto t3 = build_signal_model(cfg, SignalKind::T3);
  CHECK(t3(0.0) == 0.0);
  CHECK(close(slope_at_zero(t3), t3.omega(), 1e-6));
  CHECK(t3.eta_L() > t2.eta_L());

  const auto t3_off = build_signal_model(cfg, SignalKind::T3, 1e-8);
  double worst = 0.0;
  const double period = 2 * pi / t2.omega();
  for (int i = 0; i <= 400; ++i) {
    const double t = 1.5 * period * i / 400.0;
    worst = std::max(worst, std::abs(t3_off(t) - t2(t)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("signal bounds and sign") {
  for (long N : {200L, 1000L, 3000L}) {
    const auto cfg = paper_trap(N);
    for (auto kind : {SignalKind::T1, SignalKind::T2, SignalKind::T3}) {
      const auto m = build_signal_model(cfg, kind);
      CAPTURE(N);
      CAPTURE(to_string(kind));
      CHECK(m.omega() > 0.0);
      CHECK(m(0.0) == 0.0);
      CHECK(close(slope_at_zero(m), m.omega(), 1e-6));
      const double period = 2 * pi / m.omega();
      double peak = 0.0;
      for (int i = 0; i <= 300; ++i) peak = std::max(peak, std::abs(m(3 * period * i / 300.0)));
      CHECK(peak <= 1.0 + 1e-12);
    }
  }
  // gamma1 < 0 reverses the signal.
  const auto flipped = build_signal_model(paper_trap(1000, 0.97, 1.03), SignalKind::T1);
  CHECK(flipped.omega() < 0.0);
}

TEST_CASE("signal kind names and working range") {
  CHECK(parse_signal_kind("T1") == SignalKind::T1);
  CHECK(parse_signal_kind("T3") == SignalKind::T3);
  CHECK(to_string(SignalKind::T2) == "T2");
  CHECK_THROWS_AS(parse_signal_kind("T4"), ConfigError);

  CHECK_FALSE(in_working_range(paper_trap(5)));
  CHECK(in_working_range(paper_trap(1000)));
  CHECK_FALSE(in_working_range(paper_trap(200000)));
}
