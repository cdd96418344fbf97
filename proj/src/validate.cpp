#include <cmath>
#include <sstream>

#include "bmlab/analytic.hpp"
#include "bmlab/deviation.hpp"
#include "bmlab/gp_solver.hpp"
#include "bmlab/harness.hpp"

namespace bmlab::harness {

namespace {
using namespace analytic;

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

Check bound(std::string name, double err, double tol) {
  return {std::move(name), err < tol, "err " + sci(err) + " (tol " + sci(tol) + ")"};
}

units::ScaledConfig reference_config(long N) {
  units::ScaledConfig c;
  c.lambda = 0.01;
  c.a12 = 0.0092;
  c.a11 = 1.03 * c.a12;
  c.a22 = 0.97 * c.a12;
  c.N = N;
  c.mass = units::rb87_mass_amu * units::atomic_mass_unit;
  c.omega_T = 2.0 * units::pi * 350.0;
  return c;
}
}  // namespace

std::vector<Check> validation_suite() {
  std::vector<Check> out;
  const double eta_T = eta_T_internal();
  const auto cfg = reference_config(1000);

  out.push_back(bound("Gamma_T series vs closed form",
                      std::abs(gamma_T_series(eta_T, 1.0, 40) / gamma_T_cigar(eta_T, 1.0) - 1.0),
                      1e-10));

  const auto radial = radial_rule();
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n) {
    const double v = radial.integrate([&](double r) { return xi(n, r) * std::pow(xi(0, r), 3); });
    worst = std::max(worst, std::abs(v / (eta_T * std::ldexp(1.0, -n)) - 1.0));
  }
  out.push_back(bound("<xi_n|xi_0^3> = eta_T / 2^n, n = 1..10", worst, 1e-10));

  const auto tf = thomas_fermi(cfg, eta_T);
  const auto rule = tf.support_rule();
  const double norm = rule.integrate([&](double z) { return tf.density(z); });
  const double quartic = rule.integrate([&](double z) { return tf.density(z) * tf.density(z); });
  out.push_back(bound("Thomas-Fermi normalization", std::abs(norm - 1.0), 1e-10));
  out.push_back(bound("Thomas-Fermi q0(0) z_N = 3/4", std::abs(tf.density(0.0) * tf.z_N - 0.75), 1e-10));
  out.push_back(bound("Thomas-Fermi eta_L z_N = 3/5", std::abs(quartic * tf.z_N - 0.6), 1e-10));

  const auto chi = chi01_series(cfg, eta_T, eta_L_tf(tf));
  double proj = 0.0;
  for (std::size_t i = 0; i < chi.rule.size(); ++i) proj += chi.rule.w[i] * chi.chi00[i] * chi.chi01[i];
  out.push_back(bound("<xi_0|chi01> = 0", std::abs(proj), 1e-12));

  const auto weak = perturbed_profile(cfg, eta_T, 1e-8 * gamma_T_cigar(eta_T, 1.0));
  double dev = 0.0;
  for (int i = -50; i <= 50; ++i) {
    const double z = 0.02 * i * tf.z_N;
    dev = std::max(dev, std::abs(weak.density(z) - tf.density(z)) / tf.density(0.0));
  }
  out.push_back(bound("perturbed profile -> Thomas-Fermi as Gamma_T -> 0", dev, 1e-5));

  for (auto kind : {SignalKind::T1, SignalKind::T2, SignalKind::T3}) {
    const auto m = build_signal_model(cfg, kind);
    const double h = 1e-4 / std::abs(m.omega());
    const double slope = (m(h) - m(-h)) / (2.0 * h);
    out.push_back(bound(to_string(kind) + " slope at t = 0 equals Omega_N",
                        std::abs(slope / m.omega() - 1.0), 1e-6));
  }

  const auto t1 = build_signal_model(cfg, SignalKind::T1);
  out.push_back(bound("period of T1 = 2 pi / Omega_N",
                      std::abs(deviation::period_tau(t1) * std::abs(t1.omega()) / (2.0 * units::pi) - 1.0),
                      1e-8));

  auto linear = cfg;
  linear.a11 = linear.a22 = linear.a12 = 0.0;
  const Grid1D line = Grid1D::symmetric(80.0, 512);
  const auto g1 = gp::relax_reduced_1d(linear, eta_T, line);
  double err1 = 0.0;
  for (std::size_t i = 0; i < line.n; ++i) {
    const double z = line.coord(i);
    const double exact = std::pow(cfg.lambda / units::pi, 0.25) * std::exp(-0.5 * cfg.lambda * z * z);
    err1 += std::norm(std::abs(g1.field[i]) - exact) * line.dz();
  }
  out.push_back(bound("linear 1D ground state vs Gaussian (L2)", std::sqrt(err1), 1e-6));

  const Grid3D box = Grid3D::make(7.0, 32, 80.0, 128);
  const auto g3 = gp::ground_state_3d(linear, box);
  out.push_back(bound("linear 3D energy = (2 + lambda) / 2",
                      std::abs(g3.energy.total() - 0.5 * (2.0 + cfg.lambda)), 1e-6));
  return out;
}

}  // namespace bmlab::harness
