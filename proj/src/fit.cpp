#include "bmlab/fit.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <random>

#include "bmlab/errors.hpp"

namespace bmlab::fit {

double objective(const deviation::TimeSeries& data, analytic::SignalKind kind,
                 units::ScaledConfig cfg, double a22) {
  cfg.a22 = a22;
  const auto model = analytic::build_signal_model(cfg, kind);
  double sse = 0.0;
  for (std::size_t i = 0; i < data.t.size(); ++i) {
    const double r = data.y[i] - model(data.t[i]);
    sse += r * r;
  }
  return sse;
}

FitResult fit_parameter(const deviation::TimeSeries& data, analytic::SignalKind kind,
                        const units::ScaledConfig& cfg, const FitSettings& s) {
  if (data.t.empty() || data.t.size() != data.y.size())
    throw ContractError("deviation-fit/fit_parameter", "data series is empty or ragged");
  if (!(cfg.a12 > 0.0) || !(s.bracket_hi > s.bracket_lo) || s.scan_points < 3)
    throw ContractError("deviation-fit/fit_parameter", "invalid bracket");

  FitResult result;
  result.kind = kind;
  auto f = [&](double a22) {
    const double v = objective(data, kind, cfg, a22);
    result.history.push_back({a22, v});
    return v;
  };

  const double lo = s.bracket_lo * cfg.a12, hi = s.bracket_hi * cfg.a12;
  const double step = (hi - lo) / (s.scan_points - 1);
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.scan_points; ++i) {
    const double v = f(lo + i * step);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  const double a = lo + std::max(0, best - 1) * step;
  const double b = lo + std::min(s.scan_points - 1, best + 1) * step;

  // Brent's tolerance is relative to the variable, so each pass works on an
  // offset scaled to its own bracket; the second pass zooms in on the first.
  std::uintmax_t iterations = 0;
  bool converged = true;
  auto refine = [&](double centre, double lower, double upper) {
    const double scale = std::max(centre - lower, upper - centre);
    std::uintmax_t it = static_cast<std::uintmax_t>(s.max_iterations);
    const auto [u, fu] = boost::math::tools::brent_find_minima(
        [&](double v) { return f(centre + v * scale); }, (lower - centre) / scale,
        (upper - centre) / scale, std::numeric_limits<double>::digits, it);
    iterations += it;
    converged = converged && it < static_cast<std::uintmax_t>(s.max_iterations);
    return std::pair{centre + u * scale, fu};
  };
  const double x0 = lo + best * step;
  auto [x1, f1] = refine(x0, a, b);
  const double zoom = 1e-3 * step;
  auto [x, fx] = refine(x1, std::max(a, x1 - zoom), std::min(b, x1 + zoom));
  if (f1 < fx) {
    x = x1;
    fx = f1;
  }
  result.iterations = static_cast<long>(iterations);
  result.converged = converged;
  result.a22_hat = x;
  result.sse = fx;
  const double edge_tol = 1e-6 * step;
  result.at_boundary = x - lo < edge_tol || hi - x < edge_tol;

  units::ScaledConfig fitted = cfg;
  fitted.a22 = x;
  result.gamma1_hat = fitted.gamma1();
  const double lT = cfg.length_unit();
  result.a22_hat_si = x * lT;
  result.gamma1_hat_si = result.gamma1_hat * cfg.energy_unit() * lT * lT * lT;
  return result;
}

deviation::TimeSeries add_noise(const deviation::TimeSeries& data, double amplitude,
                                std::uint64_t seed) {
  deviation::TimeSeries out = data;
  if (amplitude == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, amplitude);
  for (double& y : out.y) y += noise(rng);
  return out;
}

deviation::TimeSeries synthesize(const analytic::SignalModel& model, std::vector<double> t) {
  deviation::TimeSeries out;
  out.y = model.evaluate(t);
  out.t = std::move(t);
  return out;
}

}  // namespace bmlab::fit
