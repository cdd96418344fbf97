#pragma once

#include <span>
#include <string>
#include <vector>

#include "bmlab/grid.hpp"
#include "bmlab/quadrature.hpp"
#include "bmlab/units.hpp"

// Closed-form and quadrature-level models of the quasi-1D condensate. All
// arguments and results are in transverse-oscillator units unless a
// parameter says otherwise.
namespace bmlab::analytic {

/// 1 / (4 pi rho0^2), the quartic integral of the transverse Gaussian.
double eta_T_gaussian(double rho0);
/// eta_T_gaussian at rho0 = 1/sqrt(2), i.e. 1 / (2 pi).
double eta_T_internal();

/// eta_T^2 ln(4/3) / (2 hbar omega_T).
double gamma_T_cigar(double eta_T, double hbar_omega_T);
/// Partial sum of sum_n <xi_n|xi_0^3>^2 / (E_n - mu_0) using
/// <xi_n|xi_0^3> = eta_T / 2^n and E_n - mu_0 = 2 n hbar omega_T.
double gamma_T_series(double eta_T, double hbar_omega_T, int terms);

/// Interaction strength of the reduced longitudinal equation, g11 (N - 1) eta_T.
double longitudinal_coupling(const units::ScaledConfig& cfg, double eta_T);
/// z_N = [3 c / (2 lambda^2)]^(1/3) with c the longitudinal coupling.
double thomas_fermi_radius(const units::ScaledConfig& cfg, double eta_T);

struct TFProfile {
  double z_N = 0.0;
  double mu_L = 0.0;
  double coupling = 0.0;
  double lambda = 0.0;
  Grid1D grid;
  std::vector<double> q0;  // sampled on grid

  double density(double z) const;
  /// Gauss-Legendre rule on [-z_N, z_N].
  QuadratureRule support_rule(int panels = 64) const;
};

/// Thomas-Fermi density sampled on `grid`. Throws ContractError if the grid
/// half-extent is below 1.2 z_N.
TFProfile thomas_fermi(const units::ScaledConfig& cfg, double eta_T, const Grid1D& grid);
/// Analytic profile without samples.
TFProfile thomas_fermi(const units::ScaledConfig& cfg, double eta_T);

/// integral of q0^2 = 3 / (5 z_N).
double eta_L_tf(const TFProfile& profile);
/// The longitudinal quartic integral as it is often quoted,
/// (2/5) [9 pi lambda^2 rho0^2 / (2 (N - 1) g11)]^(1/3). Kept for
/// diagnostics: it corresponds to eta_T = 1 / (2 pi rho0^2) and is
/// 2^(1/3) times smaller than eta_L_tf.
double eta_L_printed(const units::ScaledConfig& cfg);

/// Laguerre polynomial L_n(x) by the three-term recurrence.
double laguerre(int n, double x);
/// Unit-normalized radial oscillator state with zero angular momentum,
/// exp(-rho^2/2) L_n(rho^2) / sqrt(pi).
double xi(int n, double rho);

/// First-order transverse correction chi01 = prefactor * sum_n xi_n / (2^n n)
/// with prefactor -(N - 1) g11 eta_T eta_L / 2.
struct TransverseCorrection {
  QuadratureRule rule;  // radial, weights include 2 pi rho
  std::vector<double> chi00;
  std::vector<double> chi01;
  double prefactor = 0.0;
  int terms = 0;

  double chi01_at(double rho) const;
};

TransverseCorrection chi01_series(const units::ScaledConfig& cfg, double eta_T, double eta_L,
                                  QuadratureRule radial = radial_rule());

/// Longitudinal profile with the first-order transverse correction,
/// |phi0|^2 = [eta_T - eta_T sqrt(1 - kappa u)] / (6 c Gamma_T),
/// u = mu~ - lambda^2 z^2 / 2, kappa = 12 Gamma_T / eta_T^2, c = g11 (N - 1).
struct PerturbedProfile {
  double mu_tilde = 0.0;
  double mu_L = 0.0;  // uncorrected Thomas-Fermi value
  double mu1 = 0.0;   // mu_tilde - mu_L
  double gamma_T = 0.0;
  double kappa = 0.0;
  double coupling = 0.0;
  double eta_T = 0.0;
  double lambda = 0.0;
  double z_edge = 0.0;  // support half-width
  double norm_residual = 0.0;
  long N = 0;
  Grid1D grid;
  std::vector<double> phi0_sq;  // sampled on grid (empty without a grid)
  std::vector<double> phi01;    // phi0 - phi00 on grid

  double density(double z) const;
  QuadratureRule support_rule(int panels = 64) const;
};

/// Solves for mu~ by bisection so that |phi0|^2 integrates to one. Throws
/// PerturbationBreakdown when no admissible mu~ normalizes the profile.
/// A grid with n == 0 skips the sampling.
PerturbedProfile perturbed_profile(const units::ScaledConfig& cfg, double eta_T, double gamma_T,
                                   const Grid1D& grid = {});

struct CorrectedEtas {
  double eta_T;
  double eta_L;
};

/// eta_T from |chi00 + chi01|^4 over the plane, eta_L from |phi0|^4 over the support.
CorrectedEtas corrected_etas(const PerturbedProfile& p, const TransverseCorrection& t);

enum class SignalKind { T1, T2, T3 };

std::string to_string(SignalKind kind);
/// Accepts "T1", "T2", "T3". Throws ConfigError otherwise.
SignalKind parse_signal_kind(const std::string& text);

/// Omega_N = (N - 1) eta_T eta_L gamma1.
double omega_N(const units::ScaledConfig& cfg, double eta_T, double eta_L);

/// Expected signal. T1 is sin(Omega t); T2 and T3 are
/// Im int q exp(i Omega t q / eta_L) dz for their density q, which has
/// slope +Omega at t = 0 when int q^2 = eta_L.
class SignalModel {
 public:
  static SignalModel sinusoid(double omega, double eta_T, double eta_L);
  /// Throws ContractError unless the rule integrates density^2 to eta_L
  /// within 1e-8 relative.
  static SignalModel phase_integral(SignalKind kind, double omega, double eta_T, double eta_L,
                                    const QuadratureRule& rule, std::span<const double> density);

  SignalKind kind() const { return kind_; }
  double omega() const { return omega_; }
  double eta_T() const { return eta_T_; }
  double eta_L() const { return eta_L_; }
  bool in_working_range() const { return in_working_range_; }
  void set_working_range(bool v) { in_working_range_ = v; }

  double operator()(double t) const;
  std::vector<double> evaluate(std::span<const double> t) const;

 private:
  SignalKind kind_ = SignalKind::T1;
  double omega_ = 0.0;
  double eta_T_ = 0.0;
  double eta_L_ = 0.0;
  bool in_working_range_ = true;
  std::vector<double> weight_;  // w_i q_i
  std::vector<double> rate_;    // q_i / eta_L
};

double signal_T1(double omega, double t);
double signal_T2(const SignalModel& model, double t);
double signal_T3(const SignalModel& model, double t);

/// Thomas-Fermi radius above three longitudinal oscillator lengths and
/// mu_L below the transverse level spacing.
bool in_working_range(const units::ScaledConfig& cfg);

/// The model of the given kind for cfg with the analytic transverse Gaussian.
/// `correction_scale` multiplies both first-order corrections of T3 (Gamma_T
/// and chi01); 0 turns them off.
SignalModel build_signal_model(const units::ScaledConfig& cfg, SignalKind kind,
                               double correction_scale = 1.0);

}  // namespace bmlab::analytic
