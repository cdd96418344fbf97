#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bmlab/analytic.hpp"
#include "bmlab/config_file.hpp"
#include "bmlab/gp_solver.hpp"
#include "bmlab/grid.hpp"
#include "bmlab/units.hpp"

namespace bmlab::deviation {

/// Real signal sampled at times t (internal units).
struct TimeSeries {
  std::vector<double> t;
  std::vector<double> y;

  std::size_t size() const { return t.size(); }
};

/// Im O(t) of a trajectory.
TimeSeries from_trajectory(const gp::Trajectory& tr);

/// Interval between the zero crossing at t = 0 and the next one in the same
/// direction, found on a dense scan up to `window_periods` * 2 pi / |Omega|,
/// refined by bisection and closed by linear interpolation. Throws
/// ContractError if no such crossing lies in the window or Omega = 0.
double period_tau(const analytic::SignalModel& model, double window_periods = 3.0);

/// sqrt(mean over t_i <= tau of (y_i - model(t_i))^2).
double rms_deviation(const TimeSeries& data, const analytic::SignalModel& model, double tau);
/// Same with the model already sampled at the data times.
double rms_deviation(const TimeSeries& data, std::span<const double> model_values, double tau);

/// Root mean square over grid points of sqrt(a) - sqrt(b).
double wavefunction_rms_deviation(const Density1D& a, const Density1D& b);

struct DeviationRow {
  long N = 0;
  double D1 = 0.0, D2 = 0.0, D3 = 0.0;
  double tau = 0.0;  // period of T1
  double tau2 = 0.0, tau3 = 0.0;
  double eta_T = 0.0, eta_L = 0.0, eta_L_corr = 0.0, eta_T_corr = 0.0;
  double eta_N = 0.0;  // measured on the initial state
  double omega1 = 0.0, omega3 = 0.0;
  bool in_working_range = true;
  std::string error;  // empty when every quantity was computed
};

struct SignalSet {
  analytic::SignalModel t1, t2;
  std::optional<analytic::SignalModel> t3;  // absent past the perturbative range
  std::string t3_error;
};

SignalSet build_signals(const units::ScaledConfig& cfg);

/// Longest period among the available models; the data must cover it.
double required_time(const SignalSet& signals);

/// D_k of `data` against the three models. Models with Omega = 0 use the
/// whole data span as their window.
DeviationRow evaluate_row(const units::ScaledConfig& cfg, const SignalSet& signals,
                          const TimeSeries& data);

struct SweepSettings {
  Grid3D grid;
  gp::ImagTimeSettings ground_state;
  double dt = 0.01;
  int sample_every = 10;
};

/// Grid for a run or a sweep whose largest atom number is N_max.
Grid3D make_grid(const units::ScaledConfig& cfg, const NumericSettings& numeric, long N_max);

SweepSettings sweep_settings(const units::ScaledConfig& cfg, const NumericSettings& numeric,
                             long N_max);

struct SweepOutput {
  DeviationRow row;
  gp::Trajectory trajectory;
  std::optional<gp::GroundStateResult> ground_state;
};

/// Ground state, one window of coupled evolution and the D_k for one N.
/// Solver failures are reported in row.error instead of thrown.
SweepOutput deviation_run(const units::ScaledConfig& cfg, const SweepSettings& settings);

std::vector<DeviationRow> sweep_deviations(const units::ScaledConfig& base,
                                           std::span<const long> N_list,
                                           const SweepSettings& settings);

}  // namespace bmlab::deviation
