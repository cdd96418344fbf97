#pragma once

#include <numbers>

namespace bmlab::units {

// CODATA 2018.
inline constexpr double hbar = 1.054571817e-34;             // J s
inline constexpr double bohr_radius = 5.29177210903e-11;    // m
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double rb87_mass_amu = 86.909180527;
inline constexpr double pi = std::numbers::pi;

/// Trap, species and scattering parameters in SI units.
struct PhysConfig {
  double mass = 0.0;     // kg
  double omega_T = 0.0;  // rad/s, transverse
  double omega_L = 0.0;  // rad/s, longitudinal
  double a11 = 0.0;      // m
  double a22 = 0.0;
  double a12 = 0.0;
  long N = 0;

  /// Throws ConfigError unless the cigar trap invariants hold.
  void validate() const;
};

struct DerivedCouplings {
  double g11, g22, g12;  // J m^3
  double gamma1, gamma2;
  double rho0;           // sqrt(hbar / 2 m omega_T)
  double lT;             // sqrt(hbar / m omega_T)
};

double coupling_from_scattering(double a, double m);
DerivedCouplings derive_couplings(const PhysConfig& cfg);

/// Build a config from the keyed-file quantities: scattering lengths are
/// `ratio * a12` and frequencies are ordinary (Hz) frequencies.
PhysConfig make_config(double mass_amu, double omega_T_hz, double omega_L_hz, double a12_bohr,
                       double ratio_a11, double ratio_a22, long N);

/// Configuration in transverse-oscillator units: lengths in lT, times in
/// 1/omega_T, energies in hbar*omega_T (so hbar = m = omega_T = 1).
///
/// Unlike PhysConfig this type admits vanishing scattering lengths, which the
/// solvers use for linear-limit checks.
struct ScaledConfig {
  double lambda = 0.0;  // omega_L / omega_T
  double a11 = 0.0;     // in units of lT
  double a22 = 0.0;
  double a12 = 0.0;
  long N = 0;
  // Scale factors back to SI.
  double mass = 0.0;     // kg
  double omega_T = 0.0;  // rad/s

  double g11() const { return 4.0 * pi * a11; }
  double g22() const { return 4.0 * pi * a22; }
  double g12() const { return 4.0 * pi * a12; }
  double gamma1() const { return 0.5 * (g11() - g22()); }
  double gamma2() const { return 0.5 * (g11() + g22()) - g12(); }

  double length_unit() const;                          // lT in m
  double time_unit() const { return 1.0 / omega_T; }  // s
  double energy_unit() const { return hbar * omega_T; }  // J
  double longitudinal_length() const;                  // sqrt(1/lambda), internal
};

ScaledConfig to_internal_units(const PhysConfig& cfg);
PhysConfig to_si(const ScaledConfig& scaled);

}  // namespace bmlab::units
