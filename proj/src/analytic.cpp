#include "bmlab/analytic.hpp"

#include <cmath>

#include "bmlab/errors.hpp"

namespace bmlab::analytic {

using units::pi;

double eta_T_gaussian(double rho0) {
  if (!(rho0 > 0.0)) throw ContractError("analytic-signal/eta_T_gaussian", "rho0 must be positive");
  return 1.0 / (4.0 * pi * rho0 * rho0);
}

double eta_T_internal() { return 1.0 / (2.0 * pi); }

double gamma_T_cigar(double eta_T, double hbar_omega_T) {
  if (!(eta_T > 0.0) || !(hbar_omega_T > 0.0))
    throw ContractError("analytic-signal/gamma_T_cigar", "inputs must be positive");
  return eta_T * eta_T / (2.0 * hbar_omega_T) * std::log(4.0 / 3.0);
}

double gamma_T_series(double eta_T, double hbar_omega_T, int terms) {
  double sum = 0.0;
  for (int n = terms; n >= 1; --n) {
    const double overlap = eta_T * std::ldexp(1.0, -n);
    sum += overlap * overlap / (2.0 * n * hbar_omega_T);
  }
  return sum;
}

double longitudinal_coupling(const units::ScaledConfig& cfg, double eta_T) {
  return cfg.g11() * static_cast<double>(cfg.N - 1) * eta_T;
}

double thomas_fermi_radius(const units::ScaledConfig& cfg, double eta_T) {
  return std::cbrt(1.5 * longitudinal_coupling(cfg, eta_T) / (cfg.lambda * cfg.lambda));
}

double TFProfile::density(double z) const {
  const double u = mu_L - 0.5 * lambda * lambda * z * z;
  return u > 0.0 ? u / coupling : 0.0;
}

QuadratureRule TFProfile::support_rule(int panels) const {
  return composite_gauss_legendre(-z_N, z_N, panels);
}

TFProfile thomas_fermi(const units::ScaledConfig& cfg, double eta_T) {
  if (cfg.N < 2) throw ContractError("analytic-signal/thomas_fermi", "need N >= 2");
  if (!(cfg.g11() > 0.0)) throw ContractError("analytic-signal/thomas_fermi", "need g11 > 0");
  TFProfile p;
  p.lambda = cfg.lambda;
  p.coupling = longitudinal_coupling(cfg, eta_T);
  p.z_N = thomas_fermi_radius(cfg, eta_T);
  p.mu_L = 0.5 * cfg.lambda * cfg.lambda * p.z_N * p.z_N;
  return p;
}

TFProfile thomas_fermi(const units::ScaledConfig& cfg, double eta_T, const Grid1D& grid) {
  TFProfile p = thomas_fermi(cfg, eta_T);
  if (std::min(-grid.z_min, grid.z_max) < 1.2 * p.z_N)
    throw ContractError("analytic-signal/thomas_fermi",
                        "grid half-extent " + std::to_string(grid.z_max) + " is below 1.2 z_N = " +
                            std::to_string(1.2 * p.z_N));
  p.grid = grid;
  p.q0.resize(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) p.q0[i] = p.density(grid.coord(i));
  return p;
}

double eta_L_tf(const TFProfile& profile) { return 0.6 / profile.z_N; }

double eta_L_printed(const units::ScaledConfig& cfg) {
  const double rho0_sq = 0.5;
  return 0.4 * std::cbrt(9.0 * pi * cfg.lambda * cfg.lambda * rho0_sq /
                         (2.0 * static_cast<double>(cfg.N - 1) * cfg.g11()));
}

double laguerre(int n, double x) {
  if (n < 0) throw ContractError("analytic-signal/laguerre", "negative degree");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2 * k + 1 - x) * cur - k * prev) / (k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

double xi(int n, double rho) {
  const double r2 = rho * rho;
  return std::exp(-0.5 * r2) * laguerre(n, r2) / std::sqrt(pi);
}

namespace {
// Number of series terms: stop once a term's norm contribution is below
// 1e-12 of the partial sum (the xi_n are orthonormal).
int chi01_terms() {
  double partial = 0.0;
  for (int n = 1; n < 200; ++n) {
    const double c = std::ldexp(1.0, -n) / n;
    partial += c * c;
    if (c * c < 1e-12 * partial) return n;
  }
  return 200;
}

double chi01_sum(double rho, int terms) {
  const double x = rho * rho;
  double prev = 1.0, cur = 1.0 - x, sum = 0.0;
  for (int n = 1; n <= terms; ++n) {
    sum += std::ldexp(cur, -n) / n;
    const double next = ((2 * n + 1 - x) * cur - n * prev) / (n + 1);
    prev = cur;
    cur = next;
  }
  return sum * std::exp(-0.5 * x) / std::sqrt(pi);
}
}  // namespace

double TransverseCorrection::chi01_at(double rho) const {
  return prefactor * chi01_sum(rho, terms);
}

TransverseCorrection chi01_series(const units::ScaledConfig& cfg, double eta_T, double eta_L,
                                  QuadratureRule radial) {
  if (!(eta_L > 0.0)) throw ContractError("analytic-signal/chi01_series", "eta_L must be positive");
  TransverseCorrection t;
  t.prefactor = -0.5 * static_cast<double>(cfg.N - 1) * cfg.g11() * eta_T * eta_L;
  t.terms = chi01_terms();
  t.rule = std::move(radial);
  t.chi00.resize(t.rule.size());
  t.chi01.resize(t.rule.size());
  for (std::size_t i = 0; i < t.rule.size(); ++i) {
    t.chi00[i] = xi(0, t.rule.x[i]);
    t.chi01[i] = t.chi01_at(t.rule.x[i]);
  }
  return t;
}

}  // namespace bmlab::analytic
