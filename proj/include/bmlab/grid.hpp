#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "bmlab/aligned.hpp"

namespace bmlab {

/// Uniform periodic grid on [z_min, z_max): point i sits at z_min + i*dz.
struct Grid1D {
  double z_min = 0.0;
  double z_max = 0.0;
  std::size_t n = 0;

  static Grid1D symmetric(double half_extent, std::size_t n);

  double dz() const { return (z_max - z_min) / static_cast<double>(n); }
  double coord(std::size_t i) const { return z_min + static_cast<double>(i) * dz(); }
  double length() const { return z_max - z_min; }
  std::vector<double> coords() const;
  /// Angular wave numbers in FFT order.
  std::vector<double> wavenumbers() const;

  void validate() const;
  bool operator==(const Grid1D&) const = default;
};

/// Rectilinear 3D grid; x, y transverse, z longitudinal. Storage is
/// row-major with z fastest.
struct Grid3D {
  Grid1D x, y, z;

  static Grid3D make(double transverse_half_extent, std::size_t transverse_n,
                     double longitudinal_half_extent, std::size_t longitudinal_n);

  std::size_t size() const { return x.n * y.n * z.n; }
  double cell_volume() const { return x.dz() * y.dz() * z.dz(); }
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * y.n + j) * z.n + k;
  }

  void validate() const;
  bool operator==(const Grid3D&) const = default;
};

/// Longitudinal half-extent from the box-sizing rule: the larger of eight
/// longitudinal oscillator lengths and 1.5 Thomas-Fermi radii.
double longitudinal_half_extent(double lambda, double thomas_fermi_radius);

using GridShape = std::variant<Grid1D, Grid3D>;

/// Complex amplitudes on a 1D or 3D grid.
class ComplexField {
 public:
  ComplexField() = default;
  explicit ComplexField(GridShape grid);
  ComplexField(GridShape grid, cvector values);

  const GridShape& grid() const { return grid_; }
  bool is_3d() const { return std::holds_alternative<Grid3D>(grid_); }
  const Grid1D& grid1d() const;
  const Grid3D& grid3d() const;

  std::size_t size() const { return data_.size(); }
  double cell_volume() const;

  std::span<std::complex<double>> values() { return data_; }
  std::span<const std::complex<double>> values() const { return data_; }
  std::complex<double>& operator[](std::size_t i) { return data_[i]; }
  const std::complex<double>& operator[](std::size_t i) const { return data_[i]; }

  /// Largest boundary magnitude relative to the peak magnitude.
  double boundary_ratio() const;
  bool all_finite() const;

 private:
  GridShape grid_;
  cvector data_;
};

/// Real density sampled on a 1D grid.
struct Density1D {
  Grid1D grid;
  std::vector<double> values;

  double integral() const;
};

bool same_grid(const ComplexField& a, const ComplexField& b);

/// Trapezoid integral of |f|^2 (the grids are periodic so this is the plain
/// Riemann sum).
double norm_squared(const ComplexField& f);

/// Integral of |f|^4. Throws ContractError if f is not normalized to 1e-6.
double eta_integral(const ComplexField& f);

/// Integral of conj(f) * g. Throws ContractError on grid mismatch.
std::complex<double> overlap(const ComplexField& f, const ComplexField& g);

/// q(z) = integral of |f|^2 over x and y.
Density1D marginal_longitudinal(const ComplexField& f3);

/// Density along x after integrating |f|^2 over y and z.
Density1D marginal_transverse_x(const ComplexField& f3);

}  // namespace bmlab
