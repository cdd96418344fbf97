#include "bmlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "bmlab/analytic.hpp"
#include "bmlab/config_file.hpp"
#include "bmlab/deviation.hpp"
#include "bmlab/errors.hpp"
#include "bmlab/fit.hpp"
#include "bmlab/gp_solver.hpp"
#include "bmlab/io.hpp"
#include "bmlab/version.hpp"

namespace bmlab::harness {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

Command parse_command(const std::string& name) {
  if (name == "ground-state") return Command::GroundState;
  if (name == "evolve") return Command::Evolve;
  if (name == "sweep") return Command::Sweep;
  if (name == "fit") return Command::Fit;
  if (name == "validate") return Command::Validate;
  throw ConfigError("cli-harness/run", "unknown command '" + name + "'");
}

std::string to_string(Command c) {
  switch (c) {
    case Command::GroundState: return "ground-state";
    case Command::Evolve: return "evolve";
    case Command::Sweep: return "sweep";
    case Command::Fit: return "fit";
    case Command::Validate: return "validate";
  }
  return "?";
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const ConvergenceError*>(&e)) return kExitConvergence;
  if (dynamic_cast<const PerturbationBreakdown*>(&e)) return kExitBreakdown;
  return kExitFailure;
}

namespace {

std::string hex(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

class Context {
 public:
  Context(const RunSpec& spec, RunConfig cfg, std::ostream& log)
      : spec_(spec), cfg_(std::move(cfg)), log_(log) {
    scaled_ = units::to_internal_units(cfg_.phys);
    N_list_ = spec.N_list.empty() ? std::vector<long>{cfg_.phys.N} : spec.N_list;
    for (long N : N_list_)
      if (N < 2) throw ConfigError("cli-harness/run", "every N must be at least 2");
  }

  units::ScaledConfig at(long N) const {
    units::ScaledConfig s = scaled_;
    s.N = N;
    return s;
  }
  long N_max() const { return *std::max_element(N_list_.begin(), N_list_.end()); }
  const std::vector<long>& N_list() const { return N_list_; }
  const NumericSettings& numeric() const { return cfg_.numeric; }
  const RunConfig& config() const { return cfg_; }
  const RunSpec& spec() const { return spec_; }
  std::ostream& log() { return log_; }

  io::OutputHeader header(const std::string& units) const {
    return {to_string(spec_.command), cfg_.hash(), spec_.seed, units};
  }

  fs::path artifact(const std::string& name) {
    artifacts_.push_back(name);
    return spec_.out / name;
  }
  void write_json(const std::string& name, const json& j) {
    std::ofstream out(artifact(name));
    if (!out) throw Error("cli-harness/run", "cannot write " + name);
    out << j.dump(2) << "\n";
  }

  json manifest(int status, const std::string& error) const {
    json j;
    j["tool"] = "bmlab";
    j["version"] = kVersion;
    j["command"] = to_string(spec_.command);
    j["seed"] = spec_.seed;
    j["config_hash"] = hex(cfg_.hash());
    j["config"] = cfg_.resolved;
    j["overrides"] = spec_.overrides;
    j["N"] = N_list_;
    if (!spec_.data.empty()) j["data"] = spec_.data.string();
    j["artifacts"] = artifacts_;
    j["exit_code"] = status;
    if (!error.empty()) j["error"] = error;
    return j;
  }

 private:
  const RunSpec& spec_;
  RunConfig cfg_;
  std::ostream& log_;
  units::ScaledConfig scaled_;
  std::vector<long> N_list_;
  std::vector<std::string> artifacts_;
};

gp::ImagTimeSettings imag_settings(const NumericSettings& n) {
  gp::ImagTimeSettings s;
  s.dt_start = n.dt_imag_start;
  s.dt_final = n.dt_imag;
  s.tol = n.gs_tol;
  return s;
}

struct WavefunctionRow {
  long N;
  double longitudinal, transverse;
};

WavefunctionRow wavefunction_row(const units::ScaledConfig& cfg, const ComplexField& gs) {
  const Density1D qz = marginal_longitudinal(gs);
  const auto tf = analytic::thomas_fermi(cfg, analytic::eta_T_internal(), qz.grid);
  const Density1D qx = marginal_transverse_x(gs);
  Density1D gauss{qx.grid, std::vector<double>(qx.grid.n)};
  for (std::size_t i = 0; i < qx.grid.n; ++i) {
    const double x = qx.grid.coord(i);
    gauss.values[i] = std::exp(-x * x) / std::sqrt(units::pi);
  }
  return {cfg.N, deviation::wavefunction_rms_deviation(qz, {qz.grid, tf.q0}),
          deviation::wavefunction_rms_deviation(qx, gauss)};
}

void write_wavefunction_rows(Context& ctx, const std::vector<WavefunctionRow>& rows) {
  std::vector<double> N, lon, tr;
  for (const auto& r : rows) {
    N.push_back(static_cast<double>(r.N));
    lon.push_back(r.longitudinal);
    tr.push_back(r.transverse);
  }
  io::write_csv(ctx.artifact("wavefunction_deviation.csv"),
                ctx.header("amplitude RMS over grid points, lengths in lT"),
                {"N", "longitudinal_rms", "transverse_rms"}, {N, lon, tr});
}

void write_deviation_rows(Context& ctx, const std::vector<deviation::DeviationRow>& rows) {
  std::vector<std::vector<double>> c(17);
  for (const auto& r : rows) {
    const double vals[] = {static_cast<double>(r.N), r.D1, r.D2, r.D3, r.tau, r.eta_T, r.eta_L,
                           r.eta_L_corr, r.tau2, r.tau3, r.eta_T_corr, r.eta_N, r.omega1,
                           r.omega3, r.in_working_range ? 1.0 : 0.0, r.error.empty() ? 1.0 : 0.0,
                           r.tau * ctx.at(r.N).time_unit()};
    for (std::size_t j = 0; j < c.size(); ++j) c[j].push_back(vals[j]);
  }
  io::write_csv(ctx.artifact("deviations.csv"),
                ctx.header("internal: lengths lT, times 1/omega_T; tau_si in s"),
                {"N", "D1", "D2", "D3", "tau", "eta_T", "eta_L", "eta_L_corr", "tau2", "tau3",
                 "eta_T_corr", "eta_N", "omega1", "omega3", "in_working_range", "complete",
                 "tau_si"},
                c);
}

int cmd_ground_state(Context& ctx) {
  const Grid3D grid = deviation::make_grid(ctx.at(ctx.N_max()), ctx.numeric(), ctx.N_max());
  std::vector<WavefunctionRow> wf;
  for (long N : ctx.N_list()) {
    const auto cfg = ctx.at(N);
    ctx.log() << "ground-state N=" << N << " grid " << grid.x.n << "x" << grid.y.n << "x"
              << grid.z.n << "\n";
    const auto gs = gp::ground_state_3d(cfg, grid, imag_settings(ctx.numeric()));
    const std::string tag = "_N" + std::to_string(N);
    io::write_field(ctx.artifact("ground_state" + tag + ".bin"), gs.field);

    const double eta_T = analytic::eta_T_internal();
    const Density1D qz = marginal_longitudinal(gs.field);
    const auto tf = analytic::thomas_fermi(cfg, eta_T, grid.z);
    const auto reduced = gp::ground_state_reduced_1d(cfg, eta_T, grid.z, imag_settings(ctx.numeric()));
    std::vector<double> reduced_q(grid.z.n), phi0_sq(grid.z.n, std::nan(""));
    for (std::size_t i = 0; i < grid.z.n; ++i) reduced_q[i] = std::norm(reduced.field[i]);
    std::string breakdown;
    try {
      phi0_sq = analytic::perturbed_profile(cfg, eta_T, analytic::gamma_T_cigar(eta_T, 1.0), grid.z)
                    .phi0_sq;
    } catch (const PerturbationBreakdown& e) {
      breakdown = e.what();
    }
    io::write_csv(ctx.artifact("longitudinal" + tag + ".csv"), ctx.header("z in lT, densities in 1/lT"),
                  {"z", "q_gp3d", "q_reduced1d", "q_tf", "phi0_sq"},
                  {grid.z.coords(), qz.values, reduced_q, tf.q0, phi0_sq});

    const Density1D qx = marginal_transverse_x(gs.field);
    std::vector<double> gauss(grid.x.n);
    for (std::size_t i = 0; i < grid.x.n; ++i) {
      const double x = grid.x.coord(i);
      gauss[i] = std::exp(-x * x) / std::sqrt(units::pi);
    }
    io::write_csv(ctx.artifact("transverse" + tag + ".csv"), ctx.header("x in lT, densities in 1/lT"),
                  {"x", "q_gp3d", "q_gaussian"}, {grid.x.coords(), qx.values, gauss});
    wf.push_back(wavefunction_row(cfg, gs.field));

    json j;
    j["N"] = N;
    j["mu"] = gs.mu;
    j["mu_si"] = gs.mu * cfg.energy_unit();
    j["energy"] = {{"kinetic", gs.energy.kinetic},
                   {"trap", gs.energy.trap},
                   {"interaction", gs.energy.interaction},
                   {"total", gs.energy.total()}};
    j["virial_relative"] = gs.energy.virial(3) / gs.energy.total();
    j["residual"] = gs.residual;
    j["iterations"] = gs.iterations;
    j["eta_N"] = eta_integral(gs.field);
    j["eta_T"] = eta_T;
    j["eta_L_tf"] = analytic::eta_L_tf(tf);
    j["eta_L_printed"] = analytic::eta_L_printed(cfg);
    j["z_N"] = tf.z_N;
    j["mu_product_ansatz"] = tf.mu_L + 1.0;
    j["mu_reduced1d"] = reduced.mu;
    j["boundary_ratio"] = gs.field.boundary_ratio();
    j["in_working_range"] = analytic::in_working_range(cfg);
    if (!breakdown.empty()) j["perturbation"] = breakdown;
    ctx.write_json("ground_state" + tag + ".json", j);
  }
  write_wavefunction_rows(ctx, wf);
  return kExitOk;
}

int cmd_evolve(Context& ctx) {
  const auto settings = deviation::sweep_settings(ctx.at(ctx.N_max()), ctx.numeric(), ctx.N_max());
  std::vector<deviation::DeviationRow> rows;
  for (long N : ctx.N_list()) {
    const auto cfg = ctx.at(N);
    const auto signals = deviation::build_signals(cfg);
    double t_end = deviation::required_time(signals);
    if (t_end == 0.0) t_end = 100.0 * settings.sample_every * settings.dt;
    t_end *= ctx.numeric().window_periods;
    ctx.log() << "evolve N=" << N << " t_end=" << t_end << " dt=" << settings.dt << "\n";
    const auto gs = gp::ground_state_3d(cfg, settings.grid, settings.ground_state);
    const auto tr = gp::propagate_coupled(gs.field, cfg, t_end, settings.dt, settings.sample_every);
    const std::string tag = "_N" + std::to_string(N);
    io::write_trajectory(ctx.artifact("trajectory" + tag + ".csv"),
                         ctx.header("t_si in s, t_internal in 1/omega_T"), tr, cfg);

    std::vector<double> t3(tr.times.size(), std::nan(""));
    if (signals.t3) t3 = signals.t3->evaluate(tr.times);
    io::write_csv(ctx.artifact("signals" + tag + ".csv"), ctx.header("t_internal in 1/omega_T"),
                  {"t_internal", "ImO", "T1", "T2", "T3"},
                  {tr.times, tr.overlap_imag(), signals.t1.evaluate(tr.times),
                   signals.t2.evaluate(tr.times), t3});
    auto row = deviation::evaluate_row(cfg, signals, deviation::from_trajectory(tr));
    row.eta_N = eta_integral(gs.field);
    rows.push_back(row);
  }
  write_deviation_rows(ctx, rows);
  return kExitOk;
}

int cmd_sweep(Context& ctx) {
  const auto settings = deviation::sweep_settings(ctx.at(ctx.N_max()), ctx.numeric(), ctx.N_max());
  std::vector<deviation::DeviationRow> rows;
  std::vector<WavefunctionRow> wf;
  int failures = 0;
  for (long N : ctx.N_list()) {
    ctx.log() << "sweep N=" << N << "\n";
    auto out = deviation::deviation_run(ctx.at(N), settings);
    if (!out.row.error.empty()) {
      ctx.log() << "  N=" << N << ": " << out.row.error << "\n";
      ++failures;
    }
    if (out.ground_state) wf.push_back(wavefunction_row(ctx.at(N), out.ground_state->field));
    rows.push_back(std::move(out.row));
  }
  write_deviation_rows(ctx, rows);
  write_wavefunction_rows(ctx, wf);
  return failures == static_cast<int>(rows.size()) ? kExitFailure : kExitOk;
}

int cmd_fit(Context& ctx) {
  if (ctx.spec().data.empty())
    throw ConfigError("cli-harness/run", "fit needs --data <trajectory.csv>");
  const auto kind =
      analytic::parse_signal_kind(ctx.spec().model.empty() ? ctx.numeric().fit_model : ctx.spec().model);
  const auto cfg = ctx.at(ctx.N_list().front());
  const auto data = fit::add_noise(io::read_trajectory(ctx.spec().data), ctx.numeric().noise,
                                   ctx.spec().seed);
  const auto r = fit::fit_parameter(data, kind, cfg);

  const double bohr_per_lT = cfg.length_unit() / units::bohr_radius;
  json j;
  j["model"] = analytic::to_string(kind);
  j["N"] = cfg.N;
  j["samples"] = data.size();
  j["noise"] = ctx.numeric().noise;
  j["a22_hat_bohr"] = r.a22_hat * bohr_per_lT;
  j["a22_hat_m"] = r.a22_hat_si;
  j["a22_hat_internal"] = r.a22_hat;
  j["a22_config_bohr"] = cfg.a22 * bohr_per_lT;
  j["gamma1_hat"] = r.gamma1_hat_si;
  j["gamma1_hat_internal"] = r.gamma1_hat;
  j["sse"] = r.sse;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["at_boundary"] = r.at_boundary;
  ctx.write_json("fit.json", j);

  std::vector<double> a, s;
  for (const auto& h : r.history) {
    a.push_back(h.a22 * bohr_per_lT);
    s.push_back(h.sse);
  }
  io::write_csv(ctx.artifact("fit_history.csv"), ctx.header("a22 in Bohr radii"),
                {"a22_bohr", "sse"}, {a, s});
  if (r.at_boundary) ctx.log() << "warning: minimum at the edge of the a22 bracket\n";
  if (!r.converged) {
    ctx.log() << "fit did not converge in " << r.iterations << " iterations\n";
    return kExitConvergence;
  }
  ctx.log() << "a22_hat = " << r.a22_hat * bohr_per_lT << " a0 (" << analytic::to_string(kind)
            << ", sse " << r.sse << ")\n";
  return kExitOk;
}

int cmd_validate(Context& ctx) {
  const auto checks = validation_suite();
  int failed = 0;
  json rows = json::array();
  for (const auto& c : checks) {
    ctx.log() << (c.pass ? "PASS  " : "FAIL  ") << c.name << "  " << c.detail << "\n";
    failed += c.pass ? 0 : 1;
    rows.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  ctx.log() << checks.size() - failed << "/" << checks.size() << " checks passed\n";
  ctx.write_json("validation.json", rows);
  return failed ? kExitFailure : kExitOk;
}

RunConfig load_config(const RunSpec& spec) {
  RunConfig cfg;
  if (!spec.config.empty())
    cfg = parse_config(spec.config);
  else if (spec.command == Command::Validate)
    cfg = resolve_config({{"a12_bohr", "100"}});
  else
    throw ConfigError("cli-harness/run", "--config is required for " + to_string(spec.command));
  for (const auto& o : spec.overrides) cfg = apply_override(cfg, o);
  return cfg;
}

}  // namespace

int run(const RunSpec& spec, std::ostream& log) {
  std::unique_ptr<Context> ctx;
  int status = kExitOk;
  std::string error;
  try {
    if (spec.out.empty()) throw ConfigError("cli-harness/run", "--out is required");
    fs::create_directories(spec.out);
    ctx = std::make_unique<Context>(spec, load_config(spec), log);
    switch (spec.command) {
      case Command::GroundState: status = cmd_ground_state(*ctx); break;
      case Command::Evolve: status = cmd_evolve(*ctx); break;
      case Command::Sweep: status = cmd_sweep(*ctx); break;
      case Command::Fit: status = cmd_fit(*ctx); break;
      case Command::Validate: status = cmd_validate(*ctx); break;
    }
  } catch (const std::exception& e) {
    status = exit_code_for(e);
    error = e.what();
    log << "error: " << error << "\n";
  }
  if (spec.out.empty()) return status;
  json manifest;
  if (ctx) {
    manifest = ctx->manifest(status, error);
  } else {
    manifest["tool"] = "bmlab";
    manifest["version"] = kVersion;
    manifest["command"] = to_string(spec.command);
    manifest["seed"] = spec.seed;
    manifest["overrides"] = spec.overrides;
    manifest["artifacts"] = json::array();
    manifest["exit_code"] = status;
    manifest["error"] = error;
  }
  std::error_code ec;
  fs::create_directories(spec.out, ec);
  std::ofstream out(spec.out / "manifest.json");
  out << manifest.dump(2) << "\n";
  return status;
}

}  // namespace bmlab::harness
