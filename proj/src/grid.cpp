#include "bmlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bmlab/errors.hpp"
#include "bmlab/kernels.hpp"

namespace bmlab {

namespace {
constexpr const char* kContract = "grid-field";

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid1D Grid1D::symmetric(double half_extent, std::size_t n) {
  Grid1D g{-half_extent, half_extent, n};
  g.validate();
  return g;
}

std::vector<double> Grid1D::coords() const {
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = coord(i);
  return z;
}

std::vector<double> Grid1D::wavenumbers() const {
  std::vector<double> k(n);
  const double base = 2.0 * std::numbers::pi / length();
  for (std::size_t i = 0; i < n; ++i) {
    const long m = i < n / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n);
    k[i] = base * static_cast<double>(m);
  }
  return k;
}

void Grid1D::validate() const {
  if (n < 16 || !is_pow2(n))
    throw ContractError(kContract, "grid size must be a power of two >= 16, got " + std::to_string(n));
  if (!(z_max > z_min)) throw ContractError(kContract, "grid extent must be positive");
  if (std::abs(z_max + z_min) > 1e-12 * (z_max - z_min))
    throw ContractError(kContract, "grid extent must be symmetric about 0");
}

Grid3D Grid3D::make(double transverse_half_extent, std::size_t transverse_n,
                    double longitudinal_half_extent, std::size_t longitudinal_n) {
  Grid3D g{Grid1D::symmetric(transverse_half_extent, transverse_n),
           Grid1D::symmetric(transverse_half_extent, transverse_n),
           Grid1D::symmetric(longitudinal_half_extent, longitudinal_n)};
  return g;
}

void Grid3D::validate() const {
  x.validate();
  y.validate();
  z.validate();
  if (x.n != y.n || x.z_min != y.z_min || x.z_max != y.z_max)
    throw ContractError(kContract, "transverse axes must be identical");
}

double longitudinal_half_extent(double lambda, double thomas_fermi_radius) {
  return std::max(8.0 / std::sqrt(lambda), 1.5 * thomas_fermi_radius);
}

ComplexField::ComplexField(GridShape grid) : grid_(std::move(grid)) {
  std::visit([](const auto& g) { g.validate(); }, grid_);
  const std::size_t n = std::visit(
      [](const auto& g) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(g)>, Grid1D>)
          return g.n;
        else
          return g.size();
      },
      grid_);
  data_.assign(n, std::complex<double>{});
}

ComplexField::ComplexField(GridShape grid, cvector values) : ComplexField(std::move(grid)) {
  if (values.size() != data_.size())
    throw ContractError(kContract, "value count does not match the grid");
  data_ = std::move(values);
}

const Grid1D& ComplexField::grid1d() const {
  if (auto* g = std::get_if<Grid1D>(&grid_)) return *g;
  throw ContractError(kContract, "expected a 1D field");
}

const Grid3D& ComplexField::grid3d() const {
  if (auto* g = std::get_if<Grid3D>(&grid_)) return *g;
  throw ContractError(kContract, "expected a 3D field");
}

double ComplexField::cell_volume() const {
  return is_3d() ? grid3d().cell_volume() : grid1d().dz();
}

double ComplexField::boundary_ratio() const {
  double peak = 0.0;
  for (const auto& v : data_) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  double edge = 0.0;
  if (!is_3d()) {
    edge = std::abs(data_.front());
  } else {
    const Grid3D& g = grid3d();
    for (std::size_t i = 0; i < g.x.n; ++i)
      for (std::size_t j = 0; j < g.y.n; ++j)
        for (std::size_t k = 0; k < g.z.n; ++k)
          if (i == 0 || j == 0 || k == 0)
            edge = std::max(edge, std::abs(data_[g.index(i, j, k)]));
  }
  return edge / peak;
}

bool ComplexField::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const std::complex<double>& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

double Density1D::integral() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.dz();
}

bool same_grid(const ComplexField& a, const ComplexField& b) { return a.grid() == b.grid(); }

double norm_squared(const ComplexField& f) {
  return kernels::active::sum_abs2(f.values()) * f.cell_volume();
}

double eta_integral(const ComplexField& f) {
  const double norm = norm_squared(f);
  if (std::abs(norm - 1.0) > 1e-6)
    throw ContractError(kContract + std::string("/eta_integral"),
                        "field must be normalized, norm = " + std::to_string(norm));
  return kernels::active::sum_abs4(f.values()) * f.cell_volume();
}

std::complex<double> overlap(const ComplexField& f, const ComplexField& g) {
  if (!same_grid(f, g)) throw ContractError(kContract + std::string("/overlap"), "grid mismatch");
  return kernels::active::sum_conj_product(f.values(), g.values()) * f.cell_volume();
}

Density1D marginal_longitudinal(const ComplexField& f3) {
  const Grid3D& g = f3.grid3d();
  Density1D out{g.z, std::vector<double>(g.z.n)};
  kernels::active::marginal_last_axis(f3.values(), g.x.n * g.y.n, g.z.n, out.values);
  const double w = g.x.dz() * g.y.dz();
  for (double& v : out.values) v *= w;
  return out;
}

Density1D marginal_transverse_x(const ComplexField& f3) {
  const Grid3D& g = f3.grid3d();
  Density1D out{g.x, std::vector<double>(g.x.n)};
  kernels::active::marginal_first_axis(f3.values(), g.x.n, g.y.n * g.z.n, out.values);
  const double w = g.y.dz() * g.z.dz();
  for (double& v : out.values) v *= w;
  return out;
}

}  // namespace bmlab
