#include "bmlab/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include "bmlab/errors.hpp"
#include "bmlab/units.hpp"

namespace bmlab {

namespace {
using Gauss = boost::math::quadrature::gauss<double, 16>;

// Boost stores the non-negative half of the symmetric rule.
void append_panel(double a, double b, QuadratureRule& rule) {
  const auto& xs = Gauss::abscissa();
  const auto& ws = Gauss::weights();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] == 0.0) {
      rule.x.push_back(mid);
      rule.w.push_back(half * ws[i]);
      continue;
    }
    rule.x.push_back(mid - half * xs[i]);
    rule.w.push_back(half * ws[i]);
    rule.x.push_back(mid + half * xs[i]);
    rule.w.push_back(half * ws[i]);
  }
}
}  // namespace

QuadratureRule composite_gauss_legendre(double a, double b, int panels) {
  if (!(b > a) || panels < 1)
    throw ContractError("quadrature", "need a < b and at least one panel");
  QuadratureRule rule;
  rule.x.reserve(16 * static_cast<std::size_t>(panels));
  rule.w.reserve(16 * static_cast<std::size_t>(panels));
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) append_panel(a + p * h, p + 1 == panels ? b : a + (p + 1) * h, rule);
  return rule;
}

QuadratureRule composite_gauss_legendre(const std::vector<double>& breaks, int panels_per_piece) {
  if (breaks.size() < 2) throw ContractError("quadrature", "need at least two break points");
  QuadratureRule rule;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    auto piece = composite_gauss_legendre(breaks[i], breaks[i + 1], panels_per_piece);
    rule.x.insert(rule.x.end(), piece.x.begin(), piece.x.end());
    rule.w.insert(rule.w.end(), piece.w.begin(), piece.w.end());
  }
  return rule;
}

QuadratureRule radial_rule(double rho_max, int panels) {
  auto rule = composite_gauss_legendre(0.0, rho_max, panels);
  for (std::size_t i = 0; i < rule.size(); ++i) rule.w[i] *= 2.0 * units::pi * rule.x[i];
  return rule;
}

}  // namespace bmlab
