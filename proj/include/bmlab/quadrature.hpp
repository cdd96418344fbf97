#pragma once

#include <vector>

namespace bmlab {

/// Nodes and weights of a fixed quadrature rule.
struct QuadratureRule {
  std::vector<double> x;
  std::vector<double> w;

  std::size_t size() const { return x.size(); }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(x[i]);
    return s;
  }
};

/// 16-point Gauss-Legendre on each of `panels` equal panels of [a, b].
QuadratureRule composite_gauss_legendre(double a, double b, int panels);

/// Same, with the panels split at every break point in (a, b).
QuadratureRule composite_gauss_legendre(const std::vector<double>& breaks, int panels_per_piece);

/// Rule for integrals over the plane of radially symmetric functions:
/// weights carry the 2 pi rho Jacobian, nodes cover [0, rho_max].
QuadratureRule radial_rule(double rho_max = 16.0, int panels = 64);

}  // namespace bmlab
