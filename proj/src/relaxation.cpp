#include <cmath>
#include <cstdio>
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
using cd = std::complex<double>;
constexpr const char* kContract = "gp-solver/relax_ground_state";

class Sphere {
 public:
  Sphere(const SpectralDomain& domain, double coupling)
      : d_(domain), c_(coupling), dv_(domain.cell_volume()), n_(domain.size()) {}

  double dot(std::span<const cd> a, std::span<const cd> b) const {
    return k::sum_conj_product(a, b).real() * dv_;
  }

  void project(std::span<const cd> psi, std::span<cd> v) const {
    const double p = dot(psi, v);
    for (std::size_t i = 0; i < n_; ++i) v[i] -= p * psi[i];
  }

  // (alpha + |k|^2/2)^-1 applied in Fourier space.
  void precondition(std::span<const cd> r, double alpha, std::span<cd> out) const {
    std::copy(r.begin(), r.end(), out.begin());
    d_.fft().forward(out);
    const auto symbol = d_.kinetic_symbol();
    const double inv_n = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] *= inv_n / (alpha + symbol[i]);
    d_.fft().backward(out);
  }

  double energy(std::span<const cd> psi) const { return d_.energy(psi, c_).total(); }

  // Second derivative of E along psi cos(t) + d sin(t) at t = 0; |d| = 1, d _|_ psi.
  double curvature(std::span<const cd> psi, std::span<const cd> d, double mu,
                   std::span<cd> work) const {
    d_.apply_hamiltonian(d, 0.0, work);
    double lin = dot(d, work);
    double nl = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double re = (std::conj(psi[i]) * d[i]).real();
      nl += 4.0 * re * re + 2.0 * std::norm(psi[i]) * std::norm(d[i]);
    }
    return 2.0 * lin + c_ * nl * dv_ - 2.0 * mu;
  }

 private:
  const SpectralDomain& d_;
  double c_, dv_;
  std::size_t n_;
};
}  // namespace

GroundStateResult relax_ground_state(const SpectralDomain& domain, double coupling,
                                     ComplexField psi, const RelaxationSettings& s) {
  if (psi.size() != domain.size())
    throw ContractError(kContract, "initial field does not match the domain");
  const std::size_t n = domain.size();
  const Sphere sphere(domain, coupling);
  auto x = psi.values();
  k::scale(x, 1.0 / std::sqrt(sphere.dot(x, x)));

  cvector h(n), r(n), z(n), z_prev(n), d(n), u(n), trial(n), work(n);
  GroundStateResult result;
  double e0 = sphere.energy(x);
  result.energy_history.push_back(e0);
  double rz_prev = 0.0;
  double mu = 0.0, res = 0.0;
  long it = 0;
  for (;; ++it) {
    domain.apply_hamiltonian(x, coupling, h);
    mu = sphere.dot(x, h);
    for (std::size_t i = 0; i < n; ++i) r[i] = h[i] - mu * x[i];
    res = std::sqrt(sphere.dot(r, r));
    if (!std::isfinite(res)) throw ConvergenceError(kContract, "residual is not finite", res);
    if (res < s.tol) break;
    if (it >= s.max_iterations)
      throw ConvergenceError(kContract,
                             "no convergence in " + std::to_string(it) + " iterations, residual " +
                                 sci(res),
                             res);

    sphere.precondition(r, std::max(mu, 1e-3), z);
    sphere.project(x, z);
    const double rz = sphere.dot(r, z);
    double beta = 0.0;
    if (it > 0 && rz_prev > 0.0) {
      for (std::size_t i = 0; i < n; ++i) work[i] = z[i] - z_prev[i];
      beta = std::max(0.0, sphere.dot(r, work) / rz_prev);
    }
    for (std::size_t i = 0; i < n; ++i) d[i] = -z[i] + beta * d[i];
    sphere.project(x, d);
    if (sphere.dot(r, d) >= 0.0) {
      for (std::size_t i = 0; i < n; ++i) d[i] = -z[i];
      sphere.project(x, d);
    }
    rz_prev = rz;
    std::copy(z.begin(), z.end(), z_prev.begin());

    // d keeps its length for the next conjugation; the step uses its direction.
    const double dn = std::sqrt(sphere.dot(d, d));
    for (std::size_t i = 0; i < n; ++i) u[i] = d[i] / dn;
    const double slope = 2.0 * sphere.dot(r, u);
    const double curv = sphere.curvature(x, u, mu, work);
    double theta = curv > 0.0 ? -slope / curv : 0.1;
    theta = std::min(theta, 0.5);

    double e1 = e0;
    for (int attempt = 0; attempt < 40; ++attempt) {
      const double c = std::cos(theta), sn = std::sin(theta);
      for (std::size_t i = 0; i < n; ++i) trial[i] = c * x[i] + sn * u[i];
      k::scale(trial, 1.0 / std::sqrt(sphere.dot(trial, trial)));
      e1 = sphere.energy(trial);
      if (e1 <= e0 + 1e-14 * std::abs(e0)) break;
      theta *= 0.5;
    }
    std::copy(trial.begin(), trial.end(), x.begin());
    e0 = e1;
    result.energy_history.push_back(e0);
  }

  result.field = std::move(psi);
  result.mu = mu;
  result.residual = res;
  result.iterations = it;
  result.energy = domain.energy(result.field.values(), coupling);
  return result;
}

GroundStateResult relax_reduced_1d(const units::ScaledConfig& cfg, double eta_T,
                                   const Grid1D& grid, const RelaxationSettings& settings) {
  if (!(eta_T > 0.0))
    throw ContractError("gp-solver/relax_reduced_1d", "eta_T must be positive");
  const double coupling = cfg.g11() * static_cast<double>(cfg.N - 1) * eta_T;
  SpectralDomain domain(grid, cfg.lambda);
  return relax_ground_state(domain, coupling, longitudinal_guess(grid, cfg.lambda, coupling),
                            settings);
}

}  // namespace bmlab::gp
