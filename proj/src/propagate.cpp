#include <cmath>
#include <string>

#include "bmlab/errors.hpp"
#include "bmlab/gp_solver.hpp"

namespace bmlab::gp {

namespace {
namespace k = kernels::active;
}

kernels::PairCouplings pair_couplings(const units::ScaledConfig& cfg) {
  const double half = 0.5 * static_cast<double>(cfg.N - 1);
  return {half * cfg.g11(), half * cfg.g12(), half * cfg.g12(), half * cfg.g22()};
}

CoupledPropagator::CoupledPropagator(const ComplexField& mode1, const ComplexField& mode2,
                                     const units::ScaledConfig& cfg)
    : CoupledPropagator(mode1, mode2, cfg.lambda, pair_couplings(cfg)) {}

CoupledPropagator::CoupledPropagator(const ComplexField& mode1, const ComplexField& mode2,
                                     double lambda, const kernels::PairCouplings& couplings)
    : domain_(std::make_shared<const SpectralDomain>(mode1.grid(), lambda)),
      couplings_(couplings),
      mode1_(mode1),
      mode2_(mode2),
      kinetic_factor_(mode1.size()) {
  if (!same_grid(mode1, mode2))
    throw ContractError("gp-solver/propagate_coupled", "modes live on different grids");
}

void CoupledPropagator::kinetic(double dt) {
  const std::size_t n = domain_->size();
  if (dt != cached_dt_) {
    const auto symbol = domain_->kinetic_symbol();
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
      kinetic_factor_[i] = std::polar(inv_n, -dt * symbol[i]);
    cached_dt_ = dt;
  }
  for (ComplexField* m : {&mode1_, &mode2_}) {
    domain_->fft().forward(m->values());
    k::multiply(m->values(), std::span<const std::complex<double>>(kinetic_factor_));
    domain_->fft().backward(m->values());
  }
}

void CoupledPropagator::advance(long steps, double dt) {
  if (steps <= 0) return;
  const auto v = domain_->potential();
  // Adjacent half steps of the position-space phase commute (|psi| is
  // unchanged by them), so they are merged into full steps.
  k::coupled_phase_step(mode1_.values(), mode2_.values(), v, couplings_, 0.5 * dt);
  for (long s = 0; s < steps; ++s) {
    kinetic(dt);
    const double h = s + 1 == steps ? 0.5 * dt : dt;
    k::coupled_phase_step(mode1_.values(), mode2_.values(), v, couplings_, h);
  }
  time_ += static_cast<double>(steps) * dt;
}

std::complex<double> CoupledPropagator::overlap() const {
  return k::sum_conj_product(mode1_.values(), mode2_.values()) * domain_->cell_volume();
}

std::pair<double, double> CoupledPropagator::linear_energy() const {
  return {domain_->energy(mode1_.values(), 0.0).total(),
          domain_->energy(mode2_.values(), 0.0).total()};
}

std::vector<double> Trajectory::overlap_imag() const {
  std::vector<double> out(overlap.size());
  for (std::size_t i = 0; i < overlap.size(); ++i) out[i] = overlap[i].imag();
  return out;
}

void check_step_stability(const ComplexField& psi, double lambda, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw ConfigError("gp-solver/propagate_coupled", "dt_real must be positive");
  CoupledPropagator probe(psi, psi, lambda, {0.0, 0.0, 0.0, 0.0});
  const double e0 = probe.linear_energy().first;
  probe.advance(20, dt);
  const double e1 = probe.linear_energy().first;
  const double drift = std::abs(e1 - e0) / std::abs(e0);
  if (!(drift <= 1e-4))
    throw ConfigError("gp-solver/propagate_coupled",
                      "dt_real = " + std::to_string(dt) + " drifts the linear energy by " +
                          std::to_string(drift) + " relative in 20 steps");
}

Trajectory propagate_coupled(const ComplexField& psi_init, const units::ScaledConfig& cfg,
                             double t_end, double dt, int sample_every) {
  if (sample_every < 1)
    throw ContractError("gp-solver/propagate_coupled", "sample_every must be >= 1");
  if (!(t_end >= 0.0))
    throw ContractError("gp-solver/propagate_coupled", "t_end must be non-negative");
  check_step_stability(psi_init, cfg.lambda, dt);

  CoupledPropagator prop(psi_init, psi_init, cfg);
  const long steps = std::lround(t_end / dt);
  const double dv = psi_init.cell_volume();
  Trajectory tr;
  auto record = [&](long step) {
    const auto o = prop.overlap();
    tr.times.push_back(static_cast<double>(step) * dt);
    tr.overlap.push_back(o);
    auto [p1, p2] = populations(std::clamp(o.imag(), -1.0, 1.0));
    tr.p1.push_back(p1);
    tr.p2.push_back(p2);
    tr.norm1.push_back(k::sum_abs2(prop.mode1().values()) * dv);
    tr.norm2.push_back(k::sum_abs2(prop.mode2().values()) * dv);
  };
  record(0);
  for (long done = 0; done + sample_every <= steps; done += sample_every) {
    prop.advance(sample_every, dt);
    if (!prop.mode1().all_finite() || !prop.mode2().all_finite())
      throw ConvergenceError("gp-solver/propagate_coupled",
                             "field became non-finite at t = " + std::to_string(prop.time()),
                             std::nan(""));
    record(done + sample_every);
  }
  return tr;
}

std::pair<double, double> populations(double O_imag) {
  if (!(std::abs(O_imag) <= 1.0))
    throw ContractError("gp-solver/populations", "|Im O| must not exceed 1");
  return {0.5 * (1.0 + O_imag), 0.5 * (1.0 - O_imag)};
}

}  // namespace bmlab::gp
