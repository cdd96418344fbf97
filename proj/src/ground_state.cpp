#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "bmlab/errors.hpp"
#include "bmlab/gp_solver.hpp"

namespace bmlab::gp {

namespace {
std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

namespace k = kernels::active;
constexpr const char* kContract = "gp-solver/imaginary_time";

void normalize(std::span<std::complex<double>> psi, double cell_volume) {
  const double norm = k::sum_abs2(psi) * cell_volume;
  k::scale(psi, 1.0 / std::sqrt(norm));
}
}  // namespace

GroundStateResult imaginary_time(const SpectralDomain& domain, double coupling, ComplexField psi,
                                 const ImagTimeSettings& s) {
  if (psi.size() != domain.size())
    throw ContractError(kContract, "initial field does not match the domain");
  if (!(s.dt_start > 0.0) || !(s.dt_final > 0.0) || s.dt_final > s.dt_start)
    throw ContractError(kContract, "need 0 < dt_final <= dt_start");

  const double dv = domain.cell_volume();
  const std::size_t n = domain.size();
  auto values = psi.values();
  normalize(values, dv);

  GroundStateResult result;
  auto res = domain.residual(values, coupling);
  result.energy_history.push_back(domain.energy(values, coupling).total());

  std::vector<double> decay(n), half(n);
  const auto half_k2 = domain.kinetic_symbol();
  const auto potential = domain.potential();
  double dt = s.dt_start;
  long steps = 0;
  bool done = res.norm < s.tol;

  while (!done) {
    const bool final_stage = dt <= s.dt_final * (1.0 + 1e-12);
    for (std::size_t i = 0; i < n; ++i)
      decay[i] = std::exp(-dt * half_k2[i]) / static_cast<double>(n);
    const long per_check = std::max(1L, std::lround(s.check_interval / dt));
    double previous_mu = res.mu;
    double previous_res = res.norm;

    while (true) {
      for (long step = 0; step < per_check; ++step) {
        // The nonlinear potential is frozen at the start of the step so both
        // half steps see the same density; letting the second one see the
        // post-kinetic density biases the fixed point at O(dt).
        k::decay_factors(values, potential, coupling, 0.5 * dt, half);
        k::multiply(values, std::span<const double>(half));
        domain.fft().forward(values);
        k::multiply(values, std::span<const double>(decay));
        domain.fft().backward(values);
        k::multiply(values, std::span<const double>(half));
        normalize(values, dv);
      }
      steps += per_check;
      res = domain.residual(values, coupling);
      result.energy_history.push_back(domain.energy(values, coupling).total());
      if (!std::isfinite(res.norm))
        throw ConvergenceError(kContract, "field diverged at dt = " + sci(dt), res.norm);
      if (res.norm < s.tol) {
        done = true;
        break;
      }
      // mu converges quadratically, so it also has to be the residual that stalls.
      if (std::abs(res.mu - previous_mu) < s.mu_tol * std::abs(res.mu) &&
          res.norm > 0.99 * previous_res)
        break;
      previous_mu = res.mu;
      previous_res = res.norm;
      if (steps > s.max_steps)
        throw ConvergenceError(kContract,
                               "no convergence within " + std::to_string(s.max_steps) +
                                   " steps, residual " + sci(res.norm),
                               res.norm);
    }
    if (final_stage) break;
    dt = std::max(dt / s.stage_factor, s.dt_final);
  }

  result.field = std::move(psi);
  result.mu = res.mu;
  result.residual = res.norm;
  result.iterations = steps;
  result.energy = domain.energy(result.field.values(), coupling);
  return result;
}

ComplexField longitudinal_guess(const Grid1D& grid, double lambda, double coupling) {
  // Gaussian whose width interpolates between the oscillator length and the
  // Thomas-Fermi radius.
  const double osc = 1.0 / std::sqrt(lambda);
  const double tf = std::cbrt(1.5 * coupling / (lambda * lambda));
  const double width = std::max(osc, 0.6 * tf);
  ComplexField f(grid);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double z = grid.coord(i);
    f[i] = std::exp(-0.5 * z * z / (width * width));
  }
  return f;
}

GroundStateResult ground_state_reduced_1d(const units::ScaledConfig& cfg, double eta_T,
                                          const Grid1D& grid, const ImagTimeSettings& settings) {
  if (!(eta_T > 0.0))
    throw ContractError("gp-solver/ground_state_reduced_1d", "eta_T must be positive");
  const double coupling = cfg.g11() * static_cast<double>(cfg.N - 1) * eta_T;
  SpectralDomain domain(grid, cfg.lambda);
  auto result =
      imaginary_time(domain, coupling, longitudinal_guess(grid, cfg.lambda, coupling), settings);
  if (result.residual > 10.0 * settings.tol)
    throw ConvergenceError("gp-solver/ground_state_reduced_1d",
                           "residual " + sci(result.residual) + " above 10 * tol at dt_final = " +
                               sci(settings.dt_final),
                           result.residual);
  return result;
}

GroundStateResult ground_state_3d(const units::ScaledConfig& cfg, const Grid3D& grid,
                                  const ImagTimeSettings& settings, const ComplexField* guess) {
  grid.validate();
  const double coupling = cfg.g11() * static_cast<double>(cfg.N - 1);
  SpectralDomain domain(grid, cfg.lambda);

  ComplexField start(grid);
  if (guess) {
    if (guess->grid() != GridShape(grid))
      throw ContractError("gp-solver/ground_state_3d", "guess does not match the grid");
    start = *guess;
  } else {
    ImagTimeSettings axial_settings = settings;
    axial_settings.tol = std::max(settings.tol, 1e-6);
    const double eta_T = 1.0 / (2.0 * std::numbers::pi);
    const auto axial = ground_state_reduced_1d(cfg, eta_T, grid.z, axial_settings);
    const auto x = grid.x.coords(), y = grid.y.coords();
    const double norm = 1.0 / std::sqrt(std::numbers::pi);
    for (std::size_t i = 0; i < grid.x.n; ++i)
      for (std::size_t j = 0; j < grid.y.n; ++j) {
        const double t = norm * std::exp(-0.5 * (x[i] * x[i] + y[j] * y[j]));
        for (std::size_t m = 0; m < grid.z.n; ++m)
          start[grid.index(i, j, m)] = t * axial.field[m].real();
      }
  }
  // Imaginary time only brings the field into the basin; conjugate gradients
  // converge the rest much faster than the slow axial mode decays.
  ImagTimeSettings coarse = settings;
  coarse.dt_final = settings.dt_start;
  coarse.tol = std::max(settings.tol, 1e-3);
  auto result = imaginary_time(domain, coupling, std::move(start), coarse);
  if (result.residual < settings.tol) return result;

  RelaxationSettings polish;
  polish.tol = settings.tol;
  auto history = std::move(result.energy_history);
  auto relaxed = relax_ground_state(domain, coupling, std::move(result.field), polish);
  history.insert(history.end(), relaxed.energy_history.begin(), relaxed.energy_history.end());
  relaxed.energy_history = std::move(history);
  relaxed.iterations += result.iterations;
  return relaxed;
}

}  // namespace bmlab::gp
