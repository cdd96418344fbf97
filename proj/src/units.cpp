#include "bmlab/units.hpp"

#include <cmath>
#include <string>

#include "bmlab/errors.hpp"

namespace bmlab::units {

namespace {
constexpr const char* kContract = "units-config";

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(kContract, what);
}
}  // namespace

void PhysConfig::validate() const {
  require(std::isfinite(mass) && mass > 0.0, "mass must be positive");
  require(std::isfinite(omega_L) && omega_L > 0.0, "omega_L must be positive");
  require(std::isfinite(omega_T) && omega_T > omega_L,
          "omega_T must exceed omega_L (cigar trap)");
  require(std::isfinite(a11) && a11 > 0.0, "a11 must be positive");
  require(std::isfinite(a22) && a22 > 0.0, "a22 must be positive");
  require(std::isfinite(a12) && a12 > 0.0, "a12 must be positive");
  require(N >= 2, "N must be at least 2");
}

double coupling_from_scattering(double a, double m) {
  if (!(m > 0.0)) throw ConfigError(kContract, "mass must be positive");
  return 4.0 * pi * hbar * hbar * a / m;
}

DerivedCouplings derive_couplings(const PhysConfig& cfg) {
  cfg.validate();
  DerivedCouplings d{};
  d.g11 = coupling_from_scattering(cfg.a11, cfg.mass);
  d.g22 = coupling_from_scattering(cfg.a22, cfg.mass);
  d.g12 = coupling_from_scattering(cfg.a12, cfg.mass);
  d.gamma1 = 0.5 * (d.g11 - d.g22);
  d.gamma2 = 0.5 * (d.g11 + d.g22) - d.g12;
  d.lT = std::sqrt(hbar / (cfg.mass * cfg.omega_T));
  d.rho0 = std::sqrt(hbar / (2.0 * cfg.mass * cfg.omega_T));
  return d;
}

PhysConfig make_config(double mass_amu, double omega_T_hz, double omega_L_hz, double a12_bohr,
                       double ratio_a11, double ratio_a22, long N) {
  PhysConfig cfg;
  cfg.mass = mass_amu * atomic_mass_unit;
  cfg.omega_T = 2.0 * pi * omega_T_hz;
  cfg.omega_L = 2.0 * pi * omega_L_hz;
  cfg.a12 = a12_bohr * bohr_radius;
  cfg.a11 = ratio_a11 * cfg.a12;
  cfg.a22 = ratio_a22 * cfg.a12;
  cfg.N = N;
  cfg.validate();
  return cfg;
}

double ScaledConfig::length_unit() const { return std::sqrt(hbar / (mass * omega_T)); }

double ScaledConfig::longitudinal_length() const { return 1.0 / std::sqrt(lambda); }

ScaledConfig to_internal_units(const PhysConfig& cfg) {
  cfg.validate();
  ScaledConfig s;
  s.mass = cfg.mass;
  s.omega_T = cfg.omega_T;
  s.lambda = cfg.omega_L / cfg.omega_T;
  const double lT = s.length_unit();
  s.a11 = cfg.a11 / lT;
  s.a22 = cfg.a22 / lT;
  s.a12 = cfg.a12 / lT;
  s.N = cfg.N;
  return s;
}

PhysConfig to_si(const ScaledConfig& s) {
  PhysConfig cfg;
  cfg.mass = s.mass;
  cfg.omega_T = s.omega_T;
  cfg.omega_L = s.lambda * s.omega_T;
  const double lT = s.length_unit();
  cfg.a11 = s.a11 * lT;
  cfg.a22 = s.a22 * lT;
  cfg.a12 = s.a12 * lT;
  cfg.N = s.N;
  return cfg;
}

}  // namespace bmlab::units
