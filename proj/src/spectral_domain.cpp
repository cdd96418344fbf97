#include "bmlab/spectral.hpp"

#include <cmath>

#include "bmlab/kernels.hpp"

namespace bmlab {

namespace {
namespace k = kernels::active;

std::array<std::size_t, 3> fft_dims(const GridShape& grid) {
  if (const auto* g = std::get_if<Grid3D>(&grid)) return {g->x.n, g->y.n, g->z.n};
  return {1, 1, std::get<Grid1D>(grid).n};
}

std::size_t grid_size(const GridShape& grid) {
  auto d = fft_dims(grid);
  return d[0] * d[1] * d[2];
}
}  // namespace

SpectralDomain::SpectralDomain(GridShape grid, double lambda)
    : grid_(std::move(grid)),
      cell_volume_(0.0),
      potential_(grid_size(grid_)),
      half_k2_(grid_size(grid_)),
      fft_(fft_dims(grid_)),
      scratch_(grid_size(grid_)) {
  const double l2 = lambda * lambda;
  if (const auto* g = std::get_if<Grid3D>(&grid_)) {
    g->validate();
    cell_volume_ = g->cell_volume();
    const auto x = g->x.coords(), y = g->y.coords(), z = g->z.coords();
    const auto kx = g->x.wavenumbers(), ky = g->y.wavenumbers(), kz = g->z.wavenumbers();
    for (std::size_t i = 0; i < g->x.n; ++i)
      for (std::size_t j = 0; j < g->y.n; ++j)
        for (std::size_t m = 0; m < g->z.n; ++m) {
          const std::size_t idx = g->index(i, j, m);
          potential_[idx] = 0.5 * (x[i] * x[i] + y[j] * y[j] + l2 * z[m] * z[m]);
          half_k2_[idx] = 0.5 * (kx[i] * kx[i] + ky[j] * ky[j] + kz[m] * kz[m]);
        }
  } else {
    const Grid1D& line = std::get<Grid1D>(grid_);
    line.validate();
    cell_volume_ = line.dz();
    const auto z = line.coords();
    const auto kz = line.wavenumbers();
    for (std::size_t m = 0; m < line.n; ++m) {
      potential_[m] = 0.5 * l2 * z[m] * z[m];
      half_k2_[m] = 0.5 * kz[m] * kz[m];
    }
  }
}

void SpectralDomain::apply_kinetic(std::span<const std::complex<double>> psi,
                                   std::span<std::complex<double>> out) const {
  std::copy(psi.begin(), psi.end(), out.begin());
  fft_.forward(out);
  k::multiply(out, std::span<const double>(half_k2_));
  fft_.backward(out);
  k::scale(out, 1.0 / static_cast<double>(size()));
}

void SpectralDomain::apply_hamiltonian(std::span<const std::complex<double>> psi, double coupling,
                                       std::span<std::complex<double>> out) const {
  apply_kinetic(psi, out);
  k::add_potential_term(psi, potential_, coupling, out);
}

EnergyParts SpectralDomain::energy(std::span<const std::complex<double>> psi,
                                   double coupling) const {
  EnergyParts e;
  std::copy(psi.begin(), psi.end(), scratch_.begin());
  fft_.forward(scratch_);
  // Parseval: sum |psi_k|^2 = n sum |psi_j|^2.
  e.kinetic = k::sum_weighted_abs2(scratch_, half_k2_) * cell_volume_ / static_cast<double>(size());
  e.trap = k::sum_weighted_abs2(psi, potential_) * cell_volume_;
  e.interaction = 0.5 * coupling * k::sum_abs4(psi) * cell_volume_;
  return e;
}

SpectralDomain::Residual SpectralDomain::residual(std::span<const std::complex<double>> psi,
                                                  double coupling) const {
  apply_hamiltonian(psi, coupling, scratch_);
  const double mu = k::sum_conj_product(psi, scratch_).real() * cell_volume_;
  const std::size_t n = size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(scratch_[i] - mu * psi[i]);
  return {mu, std::sqrt(acc * cell_volume_)};
}

}  // namespace bmlab
