#include <cmath>

#include "bmlab/analytic.hpp"
#include "bmlab/errors.hpp"

namespace bmlab::analytic {

std::string to_string(SignalKind kind) {
  switch (kind) {
    case SignalKind::T1: return "T1";
    case SignalKind::T2: return "T2";
    case SignalKind::T3: return "T3";
  }
  return "?";
}

SignalKind parse_signal_kind(const std::string& text) {
  if (text == "T1") return SignalKind::T1;
  if (text == "T2") return SignalKind::T2;
  if (text == "T3") return SignalKind::T3;
  throw ConfigError("analytic-signal/signal", "unknown model '" + text + "' (expected T1, T2 or T3)");
}

double omega_N(const units::ScaledConfig& cfg, double eta_T, double eta_L) {
  return static_cast<double>(cfg.N - 1) * eta_T * eta_L * cfg.gamma1();
}

SignalModel SignalModel::sinusoid(double omega, double eta_T, double eta_L) {
  SignalModel m;
  m.kind_ = SignalKind::T1;
  m.omega_ = omega;
  m.eta_T_ = eta_T;
  m.eta_L_ = eta_L;
  return m;
}

SignalModel SignalModel::phase_integral(SignalKind kind, double omega, double eta_T, double eta_L,
                                        const QuadratureRule& rule,
                                        std::span<const double> density) {
  if (density.size() != rule.size())
    throw ContractError("analytic-signal/signal", "density and rule sizes differ");
  double quartic = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) quartic += rule.w[i] * density[i] * density[i];
  if (!(std::abs(quartic - eta_L) <= 1e-8 * eta_L))
    throw ContractError("analytic-signal/signal", "eta_L = " + std::to_string(eta_L) +
                                               " is inconsistent with the profile (" +
                                               std::to_string(quartic) + ")");
  SignalModel m = sinusoid(omega, eta_T, eta_L);
  m.kind_ = kind;
  m.weight_.resize(rule.size());
  m.rate_.resize(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    m.weight_[i] = rule.w[i] * density[i];
    m.rate_[i] = density[i] / eta_L;
  }
  return m;
}

double SignalModel::operator()(double t) const {
  if (weight_.empty()) return std::sin(omega_ * t);
  const double phase = omega_ * t;
  double s = 0.0;
  for (std::size_t i = 0; i < weight_.size(); ++i) s += weight_[i] * std::sin(phase * rate_[i]);
  return s;
}

std::vector<double> SignalModel::evaluate(std::span<const double> t) const {
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = (*this)(t[i]);
  return out;
}

double signal_T1(double omega, double t) { return std::sin(omega * t); }

double signal_T2(const SignalModel& model, double t) {
  if (model.kind() != SignalKind::T2) throw ContractError("analytic-signal/signal_T2", "not a T2 model");
  return model(t);
}

double signal_T3(const SignalModel& model, double t) {
  if (model.kind() != SignalKind::T3) throw ContractError("analytic-signal/signal_T3", "not a T3 model");
  return model(t);
}

bool in_working_range(const units::ScaledConfig& cfg) {
  const TFProfile tf = thomas_fermi(cfg, eta_T_internal());
  return tf.z_N > 3.0 * cfg.longitudinal_length() && tf.mu_L < 1.0;
}

SignalModel build_signal_model(const units::ScaledConfig& cfg, SignalKind kind,
                               double correction_scale) {
  const double eta_T = eta_T_internal();
  const TFProfile tf = thomas_fermi(cfg, eta_T);
  const double eta_L = eta_L_tf(tf);
  SignalModel model;
  switch (kind) {
    case SignalKind::T1:
      model = SignalModel::sinusoid(omega_N(cfg, eta_T, eta_L), eta_T, eta_L);
      break;
    case SignalKind::T2: {
      const auto rule = tf.support_rule();
      std::vector<double> q(rule.size());
      for (std::size_t i = 0; i < rule.size(); ++i) q[i] = tf.density(rule.x[i]);
      model = SignalModel::phase_integral(kind, omega_N(cfg, eta_T, eta_L), eta_T, eta_L, rule, q);
      break;
    }
    case SignalKind::T3: {
      const auto profile =
          perturbed_profile(cfg, eta_T, correction_scale * gamma_T_cigar(eta_T, 1.0));
      auto chi = chi01_series(cfg, eta_T, eta_L);
      chi.prefactor *= correction_scale;
      for (double& v : chi.chi01) v *= correction_scale;
      const auto etas = corrected_etas(profile, chi);
      const auto rule = profile.support_rule();
      std::vector<double> q(rule.size());
      for (std::size_t i = 0; i < rule.size(); ++i) q[i] = profile.density(rule.x[i]);
      model = SignalModel::phase_integral(kind, omega_N(cfg, etas.eta_T, etas.eta_L), etas.eta_T,
                                          etas.eta_L, rule, q);
      break;
    }
  }
  model.set_working_range(in_working_range(cfg));
  return model;
}

}  // namespace bmlab::analytic
