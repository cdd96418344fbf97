#include "bmlab/deviation.hpp"

#include <cmath>
#include <limits>

#include "bmlab/errors.hpp"

namespace bmlab::deviation {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

TimeSeries from_trajectory(const gp::Trajectory& tr) {
  return {tr.times, tr.overlap_imag()};
}

double period_tau(const analytic::SignalModel& model, double window_periods) {
  const double omega = model.omega();
  if (omega == 0.0 || !std::isfinite(omega))
    throw ContractError("deviation-fit/period_tau", "signal frequency is zero");
  const double period = 2.0 * units::pi / std::abs(omega);
  const double dir = omega > 0.0 ? 1.0 : -1.0;
  const int per_period = 2000;
  const double h = period / per_period;
  const long points = std::lround(window_periods * per_period);

  double t_prev = h, f_prev = dir * model(h);
  for (long i = 2; i <= points; ++i) {
    const double t = i * h;
    const double f = dir * model(t);
    if (f_prev < 0.0 && f >= 0.0) {
      double a = t_prev, b = t, fa = f_prev, fb = f;
      for (int it = 0; it < 60 && b - a > 1e-15 * b; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = dir * model(m);
        if (fm < 0.0) {
          a = m;
          fa = fm;
        } else {
          b = m;
          fb = fm;
        }
      }
      return fb == fa ? b : a - fa * (b - a) / (fb - fa);
    }
    t_prev = t;
    f_prev = f;
  }
  throw ContractError("deviation-fit/period_tau",
                      "no second same-direction zero crossing within " +
                          std::to_string(window_periods) + " nominal periods");
}

double rms_deviation(const TimeSeries& data, std::span<const double> model_values, double tau) {
  if (data.t.size() != data.y.size() || model_values.size() != data.t.size())
    throw ContractError("deviation-fit/rms_deviation", "series lengths differ");
  if (data.t.empty()) throw ContractError("deviation-fit/rms_deviation", "empty sample set");
  const double spacing = data.t.size() > 1 ? data.t[1] - data.t[0] : 0.0;
  if (data.t.back() + spacing < tau * (1.0 - 1e-12))
    throw ContractError("deviation-fit/rms_deviation",
                        "data end at t = " + std::to_string(data.t.back()) +
                            " and do not cover tau = " + std::to_string(tau));
  double acc = 0.0;
  std::size_t m = 0;
  const double limit = tau * (1.0 + 1e-12);
  for (std::size_t i = 0; i < data.t.size() && data.t[i] <= limit; ++i, ++m) {
    const double d = data.y[i] - model_values[i];
    acc += d * d;
  }
  if (m == 0) throw ContractError("deviation-fit/rms_deviation", "no samples with t <= tau");
  return std::sqrt(acc / static_cast<double>(m));
}

double rms_deviation(const TimeSeries& data, const analytic::SignalModel& model, double tau) {
  return rms_deviation(data, model.evaluate(data.t), tau);
}

double wavefunction_rms_deviation(const Density1D& a, const Density1D& b) {
  if (!(a.grid == b.grid) || a.values.size() != b.values.size())
    throw ContractError("deviation-fit/wavefunction_rms_deviation", "grids differ");
  if (a.values.empty())
    throw ContractError("deviation-fit/wavefunction_rms_deviation", "empty densities");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double d = std::sqrt(std::max(0.0, a.values[i])) - std::sqrt(std::max(0.0, b.values[i]));
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(a.values.size()));
}

SignalSet build_signals(const units::ScaledConfig& cfg) {
  SignalSet s{analytic::build_signal_model(cfg, analytic::SignalKind::T1),
              analytic::build_signal_model(cfg, analytic::SignalKind::T2), std::nullopt, {}};
  try {
    s.t3 = analytic::build_signal_model(cfg, analytic::SignalKind::T3);
  } catch (const PerturbationBreakdown& e) {
    s.t3_error = e.what();
  }
  return s;
}

double required_time(const SignalSet& signals) {
  double t = 0.0;
  auto consider = [&](const analytic::SignalModel& m) {
    if (m.omega() != 0.0) t = std::max(t, period_tau(m));
  };
  consider(signals.t1);
  consider(signals.t2);
  if (signals.t3) consider(*signals.t3);
  return t;
}

DeviationRow evaluate_row(const units::ScaledConfig& cfg, const SignalSet& signals,
                          const TimeSeries& data) {
  DeviationRow row;
  row.N = cfg.N;
  row.eta_T = signals.t1.eta_T();
  row.eta_L = signals.t1.eta_L();
  row.omega1 = signals.t1.omega();
  row.in_working_range = signals.t1.in_working_range();
  if (data.t.empty()) throw ContractError("deviation-fit/sweep_deviations", "empty data");

  auto window = [&](const analytic::SignalModel& m) {
    return m.omega() != 0.0 ? period_tau(m) : data.t.back();
  };
  row.tau = window(signals.t1);
  row.D1 = rms_deviation(data, signals.t1, row.tau);
  row.tau2 = window(signals.t2);
  row.D2 = rms_deviation(data, signals.t2, row.tau2);
  if (signals.t3) {
    row.eta_T_corr = signals.t3->eta_T();
    row.eta_L_corr = signals.t3->eta_L();
    row.omega3 = signals.t3->omega();
    row.tau3 = window(*signals.t3);
    row.D3 = rms_deviation(data, *signals.t3, row.tau3);
  } else {
    row.eta_T_corr = row.eta_L_corr = row.omega3 = row.tau3 = row.D3 = kNaN;
    row.error = signals.t3_error;
  }
  return row;
}

Grid3D make_grid(const units::ScaledConfig& cfg, const NumericSettings& numeric, long N_max) {
  double half = numeric.longitudinal_half_extent;
  if (half <= 0.0) {
    units::ScaledConfig largest = cfg;
    largest.N = std::max(N_max, cfg.N);
    half = longitudinal_half_extent(
        cfg.lambda, analytic::thomas_fermi_radius(largest, analytic::eta_T_internal()));
  }
  return Grid3D::make(numeric.transverse_half_extent, numeric.transverse_n, half,
                      numeric.longitudinal_n);
}

SweepSettings sweep_settings(const units::ScaledConfig& cfg, const NumericSettings& numeric,
                             long N_max) {
  SweepSettings s;
  s.grid = make_grid(cfg, numeric, N_max);
  s.ground_state.dt_start = numeric.dt_imag_start;
  s.ground_state.dt_final = numeric.dt_imag;
  s.ground_state.tol = numeric.gs_tol;
  s.dt = numeric.dt_real;
  s.sample_every = numeric.sample_every;
  return s;
}

SweepOutput deviation_run(const units::ScaledConfig& cfg, const SweepSettings& settings) {
  SweepOutput out;
  out.row.N = cfg.N;
  try {
    const SignalSet signals = build_signals(cfg);
    out.ground_state = gp::ground_state_3d(cfg, settings.grid, settings.ground_state);
    double t_end = required_time(signals);
    t_end = t_end > 0.0 ? t_end + settings.sample_every * settings.dt
                        : 100.0 * settings.sample_every * settings.dt;
    out.trajectory =
        gp::propagate_coupled(out.ground_state->field, cfg, t_end, settings.dt, settings.sample_every);
    out.row = evaluate_row(cfg, signals, from_trajectory(out.trajectory));
    out.row.eta_N = eta_integral(out.ground_state->field);
  } catch (const Error& e) {
    out.row.D1 = out.row.D2 = out.row.D3 = kNaN;
    out.row.error = e.what();
  }
  return out;
}

std::vector<DeviationRow> sweep_deviations(const units::ScaledConfig& base,
                                           std::span<const long> N_list,
                                           const SweepSettings& settings) {
  if (N_list.empty()) throw ContractError("deviation-fit/sweep_deviations", "empty N list");
  std::vector<DeviationRow> rows;
  for (long N : N_list) {
    units::ScaledConfig cfg = base;
    cfg.N = N;
    rows.push_back(deviation_run(cfg, settings).row);
  }
  return rows;
}

}  // namespace bmlab::deviation
