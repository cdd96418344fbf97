#include <cmath>
#include <limits>

#include "bmlab/analytic.hpp"
#include "bmlab/errors.hpp"

namespace bmlab::analytic {

namespace {
constexpr const char* kContract = "analytic-signal/perturbed_profile";
constexpr int kPanels = 64;

double profile_density(double z, double mu, double lambda, double kappa, double eta_T, double c) {
  const double u = mu - 0.5 * lambda * lambda * z * z;
  if (u <= 0.0) return 0.0;
  // Rationalized minus branch; reduces to u / (eta_T c) as kappa -> 0.
  const double disc = std::max(0.0, 1.0 - kappa * u);
  return 2.0 * u / (eta_T * c * (1.0 + std::sqrt(disc)));
}

double edge(double mu, double lambda) { return std::sqrt(2.0 * mu) / lambda; }

QuadratureRule symmetric_rule(double half_width, int panels) {
  return composite_gauss_legendre({-half_width, 0.0, half_width}, panels / 2);
}
}  // namespace

double PerturbedProfile::density(double z) const {
  return profile_density(z, mu_tilde, lambda, kappa, eta_T, coupling);
}

QuadratureRule PerturbedProfile::support_rule(int panels) const {
  return symmetric_rule(z_edge, panels);
}

PerturbedProfile perturbed_profile(const units::ScaledConfig& cfg, double eta_T, double gamma_T,
                                   const Grid1D& grid) {
  if (!(eta_T > 0.0)) throw ContractError(kContract, "eta_T must be positive");
  if (!(gamma_T >= 0.0)) throw ContractError(kContract, "Gamma_T must be non-negative");
  const TFProfile tf = thomas_fermi(cfg, eta_T);

  PerturbedProfile p;
  p.N = cfg.N;
  p.eta_T = eta_T;
  p.gamma_T = gamma_T;
  p.lambda = cfg.lambda;
  p.coupling = cfg.g11() * static_cast<double>(cfg.N - 1);
  p.kappa = 12.0 * gamma_T / (eta_T * eta_T);
  p.mu_L = tf.mu_L;

  auto norm = [&](double mu) {
    return symmetric_rule(edge(mu, p.lambda), kPanels).integrate([&](double z) {
      return profile_density(z, mu, p.lambda, p.kappa, eta_T, p.coupling);
    });
  };

  // The corrected density exceeds the Thomas-Fermi one at equal u, so the
  // root lies below mu_L; the square root stays real only for mu <= 1/kappa.
  const double mu_max = p.kappa > 0.0 ? 1.0 / p.kappa : std::numeric_limits<double>::infinity();
  double lo = 0.0, hi = std::min(tf.mu_L, mu_max);
  if (norm(hi) < 1.0 - 1e-12)
    throw PerturbationBreakdown(kContract,
                                "first-order transverse correction breaks down at N = " +
                                    std::to_string(cfg.N) +
                                    ": no admissible chemical potential normalizes the profile",
                                cfg.N);
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (norm(mid) < 1.0 ? lo : hi) = mid;
  }
  p.mu_tilde = 0.5 * (lo + hi);
  p.mu1 = p.mu_tilde - p.mu_L;
  p.z_edge = edge(p.mu_tilde, p.lambda);
  p.norm_residual = std::abs(norm(p.mu_tilde) - 1.0);

  if (grid.n > 0) {
    const TFProfile sampled = thomas_fermi(cfg, eta_T, grid);
    p.grid = grid;
    p.phi0_sq.resize(grid.n);
    p.phi01.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
      p.phi0_sq[i] = p.density(grid.coord(i));
      p.phi01[i] = std::sqrt(p.phi0_sq[i]) - std::sqrt(sampled.q0[i]);
    }
  }
  return p;
}

CorrectedEtas corrected_etas(const PerturbedProfile& p, const TransverseCorrection& t) {
  double eta_T = 0.0;
  for (std::size_t i = 0; i < t.rule.size(); ++i) {
    const double chi = t.chi00[i] + t.chi01[i];
    eta_T += t.rule.w[i] * chi * chi * chi * chi;
  }
  const double eta_L = p.support_rule(kPanels).integrate([&](double z) {
    const double d = p.density(z);
    return d * d;
  });
  return {eta_T, eta_L};
}

}  // namespace bmlab::analytic
