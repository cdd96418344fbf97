#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bmlab/fft.hpp"
#include "bmlab/grid.hpp"

namespace bmlab {

/// Kinetic, trap and interaction pieces of the GP energy functional
/// E = <T> + <V> + (c/2) int |psi|^4 for a normalized field.
struct EnergyParts {
  double kinetic = 0.0;
  double trap = 0.0;
  double interaction = 0.0;

  double total() const { return kinetic + trap + interaction; }
  /// Chemical potential of a stationary state: E + (c/2) int |psi|^4.
  double chemical_potential() const { return kinetic + trap + 2.0 * interaction; }
  /// 2 E_kin - 2 E_trap + d E_int for a d-dimensional harmonic problem.
  double virial(int dim) const { return 2.0 * kinetic - 2.0 * trap + dim * interaction; }
};

/// Spectral discretization of -1/2 Laplacian + V on a periodic grid, in
/// transverse-oscillator units. On a 3D grid V = (x^2 + y^2 + lambda^2 z^2)/2,
/// on a 1D grid V = lambda^2 z^2 / 2.
class SpectralDomain {
 public:
  SpectralDomain(GridShape grid, double lambda);

  const GridShape& grid() const { return grid_; }
  std::size_t size() const { return potential_.size(); }
  double cell_volume() const { return cell_volume_; }
  int dimension() const { return std::holds_alternative<Grid3D>(grid_) ? 3 : 1; }
  std::span<const double> potential() const { return potential_; }
  /// |k|^2 / 2 in FFT order.
  std::span<const double> kinetic_symbol() const { return half_k2_; }
  const FftPlan& fft() const { return fft_; }

  /// out = T psi.
  void apply_kinetic(std::span<const std::complex<double>> psi,
                     std::span<std::complex<double>> out) const;
  /// out = (T + V + coupling |psi|^2) psi.
  void apply_hamiltonian(std::span<const std::complex<double>> psi, double coupling,
                         std::span<std::complex<double>> out) const;

  EnergyParts energy(std::span<const std::complex<double>> psi, double coupling) const;

  /// L2 norm of H psi - mu psi with mu = <psi|H|psi>; psi must be normalized.
  struct Residual {
    double mu;
    double norm;
  };
  Residual residual(std::span<const std::complex<double>> psi, double coupling) const;

 private:
  GridShape grid_;
  double cell_volume_;
  std::vector<double> potential_;
  std::vector<double> half_k2_;
  FftPlan fft_;
  mutable cvector scratch_;
};

}  // namespace bmlab
