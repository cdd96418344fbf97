#pragma once

#include <cstdint>
#include <vector>

#include "bmlab/analytic.hpp"
#include "bmlab/deviation.hpp"
#include "bmlab/units.hpp"

namespace bmlab::fit {

struct FitSettings {
  double bracket_lo = 0.5;  // times a12
  double bracket_hi = 1.5;
  /// Evenly spaced trial values scanned before the local refinement; the
  /// objective has several local minima across the bracket.
  int scan_points = 101;
  int max_iterations = 200;
};

struct FitTrial {
  double a22;  // internal units
  double sse;
};

struct FitResult {
  analytic::SignalKind kind = analytic::SignalKind::T3;
  double a22_hat = 0.0;     // internal (lT)
  double a22_hat_si = 0.0;  // m
  double gamma1_hat = 0.0;  // internal
  double gamma1_hat_si = 0.0;  // J m^3
  double sse = 0.0;
  bool converged = false;
  bool at_boundary = false;
  long iterations = 0;
  std::vector<FitTrial> history;
};

/// Sum of squared residuals of data against the model built with a22.
double objective(const deviation::TimeSeries& data, analytic::SignalKind kind,
                 units::ScaledConfig cfg, double a22);

/// Minimizes the objective over a22 in [lo, hi] * a12: a coarse scan picks
/// the best basin, then Brent's method refines it. cfg.a22 is ignored.
FitResult fit_parameter(const deviation::TimeSeries& data, analytic::SignalKind kind,
                        const units::ScaledConfig& cfg, const FitSettings& settings = {});

/// Adds independent Gaussian noise of standard deviation `amplitude`.
deviation::TimeSeries add_noise(const deviation::TimeSeries& data, double amplitude,
                                std::uint64_t seed);

/// Samples a model at the given times.
deviation::TimeSeries synthesize(const analytic::SignalModel& model, std::vector<double> t);

}  // namespace bmlab::fit
