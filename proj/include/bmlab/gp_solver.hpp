#pragma once

#include <complex>
#include <memory>
#include <utility>
#include <vector>

#include "bmlab/grid.hpp"
#include "bmlab/kernels.hpp"
#include "bmlab/spectral.hpp"
#include "bmlab/units.hpp"

namespace bmlab::gp {

/// Staged imaginary-time schedule. Each stage runs Strang steps at a fixed dt
/// until the chemical potential settles (relative change below `mu_tol`
/// between checks) or the GP residual drops below `tol`; dt is then divided
/// by `stage_factor` until it reaches `dt_final`.
struct ImagTimeSettings {
  double dt_start = 0.05;
  double dt_final = 1e-3;
  double stage_factor = 5.0;
  /// Target for ||H psi - mu psi||; results must reach 10 * tol.
  double tol = 1e-7;
  double mu_tol = 1e-12;
  /// Imaginary time between checks.
  double check_interval = 2.0;
  long max_steps = 4'000'000;
};

struct GroundStateResult {
  ComplexField field;
  double mu = 0.0;
  EnergyParts energy;
  double residual = 0.0;
  long iterations = 0;
  /// GP energy at every residual check.
  std::vector<double> energy_history;
};

/// Imaginary-time relaxation of psi on `domain`. Returns the last iterate
/// whatever its residual; throws ConvergenceError only past max_steps or on
/// a non-finite field.
GroundStateResult imaginary_time(const SpectralDomain& domain, double coupling, ComplexField psi,
                                 const ImagTimeSettings& settings);

/// 3D ground state with all atoms in state |1>: coupling g11 (N - 1).
/// Without a guess, starts from the harmonic transverse Gaussian times the
/// reduced 1D solution on the z axis. Imaginary time runs at dt_start until
/// mu settles; the O(dt^2) splitting bias left at that step size is then
/// removed by relax_ground_state on the same discretization.
GroundStateResult ground_state_3d(const units::ScaledConfig& cfg, const Grid3D& grid,
                                  const ImagTimeSettings& settings = {},
                                  const ComplexField* guess = nullptr);

/// Longitudinal ground state of the reduced 1D equation with coupling
/// g11 (N - 1) eta_T.
GroundStateResult ground_state_reduced_1d(const units::ScaledConfig& cfg, double eta_T,
                                          const Grid1D& grid,
                                          const ImagTimeSettings& settings = {});

/// Smooth starting profile for a 1D problem with the given coupling.
ComplexField longitudinal_guess(const Grid1D& grid, double lambda, double coupling);

struct RelaxationSettings {
  double tol = 1e-11;
  long max_iterations = 20000;
};

/// Direct minimization of the discrete GP energy on the unit sphere by
/// preconditioned nonlinear conjugate gradients. Independent of the
/// split-step machinery except for the shared spectral Hamiltonian.
GroundStateResult relax_ground_state(const SpectralDomain& domain, double coupling,
                                     ComplexField psi, const RelaxationSettings& settings = {});

GroundStateResult relax_reduced_1d(const units::ScaledConfig& cfg, double eta_T,
                                   const Grid1D& grid, const RelaxationSettings& settings = {});

/// Nonlinear coefficients of the coupled equations for the equal-weight
/// superposition: (N - 1)/2 * g_ab.
kernels::PairCouplings pair_couplings(const units::ScaledConfig& cfg);

/// Strang-split spectral integrator for the two coupled modes.
class CoupledPropagator {
 public:
  CoupledPropagator(const ComplexField& mode1, const ComplexField& mode2,
                    const units::ScaledConfig& cfg);
  CoupledPropagator(const ComplexField& mode1, const ComplexField& mode2, double lambda,
                    const kernels::PairCouplings& couplings);

  /// `steps` Strang steps of size dt; a negative dt runs backwards.
  void advance(long steps, double dt);

  double time() const { return time_; }
  const ComplexField& mode1() const { return mode1_; }
  const ComplexField& mode2() const { return mode2_; }
  /// <psi_1 | psi_2>.
  std::complex<double> overlap() const;
  /// Linear energy <T + V> of each mode (interactions excluded).
  std::pair<double, double> linear_energy() const;

 private:
  void kinetic(double dt);

  std::shared_ptr<const SpectralDomain> domain_;
  kernels::PairCouplings couplings_;
  ComplexField mode1_, mode2_;
  double time_ = 0.0;
  double cached_dt_ = 0.0;
  cvector kinetic_factor_;
};

struct Trajectory {
  std::vector<double> times;  // internal units
  std::vector<std::complex<double>> overlap;
  std::vector<double> p1, p2;
  std::vector<double> norm1, norm2;  // mode norms at each sample

  std::vector<double> overlap_imag() const;
};

/// Rejects dt if a short linear (g = 0) run of psi drifts the energy by more
/// than 1e-4 relative. Throws ConfigError.
void check_step_stability(const ComplexField& psi, double lambda, double dt);

/// Evolves both modes from psi_init and samples O(t) every `sample_every`
/// steps, starting at t = 0. The number of steps is round(t_end / dt).
Trajectory propagate_coupled(const ComplexField& psi_init, const units::ScaledConfig& cfg,
                             double t_end, double dt, int sample_every);

/// p_{1,2} = (1 +- Im O) / 2.
std::pair<double, double> populations(double O_imag);

}  // namespace bmlab::gp
