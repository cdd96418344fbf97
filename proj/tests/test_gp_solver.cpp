#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "bmlab/errors.hpp"
#include "bmlab/gp_solver.hpp"

using namespace bmlab;
using std::numbers::pi;

namespace {

units::ScaledConfig small_trap(long N, double a11, double a22, double a12, double lambda = 0.1) {
  units::ScaledConfig cfg;
  cfg.lambda = lambda;
  cfg.a11 = a11;
  cfg.a22 = a22;
  cfg.a12 = a12;
  cfg.N = N;
  cfg.mass = units::rb87_mass_amu * units::atomic_mass_unit;
  cfg.omega_T = 2 * pi * 350.0;
  return cfg;
}

// Scattering length of 100 Bohr radii in transverse-oscillator units at 350 Hz.
constexpr double kA12 = 0.00918;

Grid3D small_grid() { return Grid3D::make(7.0, 32, 32.0, 64); }

// Harmonic ground state exp(-(x^2 + y^2)/2 - lambda z^2/2), normalized.
ComplexField harmonic_3d(const Grid3D& g, double lambda) {
  ComplexField f(g);
  const double norm = std::pow(lambda, 0.25) / std::pow(pi, 0.75);
  for (std::size_t i = 0; i < g.x.n; ++i)
    for (std::size_t j = 0; j < g.y.n; ++j)
      for (std::size_t k = 0; k < g.z.n; ++k) {
        const double x = g.x.coord(i), y = g.y.coord(j), z = g.z.coord(k);
        f[g.index(i, j, k)] = norm * std::exp(-0.5 * (x * x + y * y + lambda * z * z));
      }
  return f;
}

ComplexField harmonic_1d(const Grid1D& g, double lambda, double width_scale = 1.0) {
  ComplexField f(g);
  const double l = width_scale / std::sqrt(lambda);
  for (std::size_t k = 0; k < g.n; ++k) {
    const double z = g.coord(k);
    f[k] = std::exp(-0.5 * z * z / (l * l)) / std::sqrt(std::sqrt(pi) * l);
  }
  return f;
}

double l2_distance(const ComplexField& a, const ComplexField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s * a.cell_volume());
}

// Ground states are real up to a global phase; fix it before comparing.
ComplexField aligned(const ComplexField& f, const ComplexField& ref) {
  const auto o = overlap(ref, f);
  ComplexField out = f;
  const auto phase = std::conj(o) / std::abs(o);
  for (auto& v : out.values()) v *= phase;
  return out;
}

}  // namespace

TEST_CASE("linear limit, reduced 1D") {
  const double lambda = 0.01;
  const auto cfg = small_trap(1000, 0.0, 0.0, 0.0, lambda);
  const auto grid = Grid1D::symmetric(80.0, 1024);
  const auto exact = harmonic_1d(grid, lambda);

  SpectralDomain domain(grid, lambda);
  // The slowest even mode decays at rate 2 lambda, so the field error is
  // about residual / (2 lambda).
  gp::ImagTimeSettings s;
  s.tol = 1e-9;
  const auto r = gp::imaginary_time(domain, 0.0, harmonic_1d(grid, lambda, 1.6), s);
  CHECK(r.residual < 10 * s.tol);
  CHECK(std::abs(norm_squared(r.field) - 1.0) < 1e-10);
  CHECK(r.mu == doctest::Approx(lambda / 2).epsilon(1e-8));
  CHECK(l2_distance(aligned(r.field, exact), exact) < 1e-6);

  const auto via_api = gp::ground_state_reduced_1d(cfg, 1 / (2 * pi), grid);
  CHECK(l2_distance(aligned(via_api.field, exact), exact) < 1e-6);
}

TEST_CASE("linear limit, 3D") {
  const double lambda = 0.1;
  const auto cfg = small_trap(1000, 0.0, 0.0, 0.0, lambda);
  const auto grid = small_grid();
  const auto exact = harmonic_3d(grid, lambda);

  // Start from a wider, displaced Gaussian so both solver stages do work.
  ComplexField guess(grid);
  for (std::size_t i = 0; i < grid.x.n; ++i)
    for (std::size_t j = 0; j < grid.y.n; ++j)
      for (std::size_t k = 0; k < grid.z.n; ++k) {
        const double x = grid.x.coord(i) - 0.3, y = grid.y.coord(j), z = grid.z.coord(k) - 1.0;
        guess[grid.index(i, j, k)] = std::exp(-0.3 * (x * x + y * y) - 0.03 * z * z);
      }
  const auto r = gp::ground_state_3d(cfg, grid, {}, &guess);
  CHECK(r.energy.total() == doctest::Approx((2 + lambda) / 2).epsilon(1e-6));
  CHECK(std::abs(r.energy.total() - (2 + lambda) / 2) < 1e-6);
  CHECK(l2_distance(aligned(r.field, exact), exact) < 1e-6);
  CHECK(std::abs(norm_squared(r.field) - 1.0) < 1e-10);

  const auto q = marginal_longitudinal(r.field);
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.z.n; ++k) {
    const double z = grid.z.coord(k);
    worst = std::max(worst, std::abs(q.values[k] - std::sqrt(lambda / pi) * std::exp(-lambda * z * z)));
  }
  CHECK(worst < 1e-6);
  const auto qx = marginal_transverse_x(r.field);
  worst = 0.0;
  for (std::size_t i = 0; i < grid.x.n; ++i) {
    const double x = grid.x.coord(i);
    worst = std::max(worst, std::abs(qx.values[i] - std::exp(-x * x) / std::sqrt(pi)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("interacting 3D ground state") {
  const auto cfg = small_trap(300, kA12, kA12, kA12);
  gp::ImagTimeSettings s;
  s.tol = 1e-9;
  // At 32 transverse points the nonlinear term leaves a tail near 1e-8 of the peak.
  const auto r = gp::ground_state_3d(cfg, Grid3D::make(7.0, 64, 32.0, 64), s);

  CHECK(std::abs(norm_squared(r.field) - 1.0) < 1e-10);
  CHECK(r.residual < 10 * s.tol);
  CHECK(std::abs(r.energy.virial(3)) < 1e-4 * std::abs(r.energy.total()));
  CHECK(r.mu == doctest::Approx(r.energy.chemical_potential()).epsilon(1e-10));
  CHECK(r.field.boundary_ratio() < 1e-8);

  // Imaginary time and the relaxation polish both lower the energy.
  for (std::size_t i = 1; i < r.energy_history.size(); ++i)
    CHECK(r.energy_history[i] <= r.energy_history[i - 1] + 1e-12 * std::abs(r.energy_history[i]));
}

TEST_CASE("reduced 1D: imaginary time and direct relaxation agree") {
  const auto cfg = small_trap(300, kA12, kA12, kA12);
  const auto grid = Grid1D::symmetric(26.0, 512);
  const double eta_T = 1 / (2 * pi);
  gp::ImagTimeSettings s;
  s.tol = 1e-10;
  const auto itp = gp::ground_state_reduced_1d(cfg, eta_T, grid, s);
  const auto pcg = gp::relax_reduced_1d(cfg, eta_T, grid);
  CHECK(l2_distance(aligned(itp.field, pcg.field), pcg.field) < 1e-6);
  CHECK(itp.mu == doctest::Approx(pcg.mu).epsilon(1e-9));
  CHECK(std::abs(itp.energy.virial(1)) < 1e-8);
  for (std::size_t i = 1; i < itp.energy_history.size(); ++i)
    CHECK(itp.energy_history[i] <= itp.energy_history[i - 1] + 1e-12);
}

TEST_CASE("solver failures are reported") {
  const auto cfg = small_trap(300, kA12, kA12, kA12);
  gp::ImagTimeSettings s;
  s.max_steps = 10;
  s.check_interval = 0.05;
  s.mu_tol = 0.0;
  try {
    gp::ground_state_reduced_1d(cfg, 1 / (2 * pi), Grid1D::symmetric(26.0, 512), s);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.last_residual() > 0.0);
  }
  CHECK_THROWS_AS(gp::ground_state_reduced_1d(cfg, 0.0, Grid1D::symmetric(26.0, 512)),
                  ContractError);
}

TEST_CASE("populations") {
  CHECK(gp::populations(0.0) == std::pair{0.5, 0.5});
  CHECK(gp::populations(1.0) == std::pair{1.0, 0.0});
  CHECK(gp::populations(-1.0) == std::pair{0.0, 1.0});
  CHECK_THROWS_AS(gp::populations(1.5), ContractError);
  CHECK_THROWS_AS(gp::populations(std::nan("")), ContractError);
}

TEST_CASE("pair couplings") {
  const auto cfg = small_trap(301, 0.03, 0.01, 0.02);
  const auto c = gp::pair_couplings(cfg);
  CHECK(c.aa == doctest::Approx(150 * cfg.g11()));
  CHECK(c.bb == doctest::Approx(150 * cfg.g22()));
  CHECK(c.ab == doctest::Approx(150 * cfg.g12()));
  CHECK(c.ba == c.ab);
}

TEST_CASE("coupled dynamics") {
  const auto grid = small_grid();
  const auto base = small_trap(300, 1.3 * kA12, 0.7 * kA12, kA12);
  const auto gs = gp::ground_state_3d(base, grid);
  const double dt = 0.01;

  SUBCASE("symmetric couplings") {
    const auto sym = small_trap(300, kA12, kA12, kA12);
    const auto tr = gp::propagate_coupled(gs.field, sym, 10.0, dt, 50);
    CHECK(tr.times.size() == 21);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      CHECK(std::abs(tr.overlap[i].imag()) < 1e-10);
      CHECK(std::abs(std::abs(tr.overlap[i]) - 1.0) < 1e-10);
      CHECK(tr.p1[i] + tr.p2[i] == 1.0);
    }
  }

  SUBCASE("initial slope and norms") {
    const double eta_N = eta_integral(gs.field);
    const double omega = (base.N - 1) * eta_N * base.gamma1();
    const auto tr = gp::propagate_coupled(gs.field, base, 15.0, dt, 10);
    CHECK(std::abs(tr.overlap[0] - 1.0) < 1e-10);
    // Im O is odd in t for a real initial state, so O_I(t)/t = Omega + O(t^2).
    const double slope = tr.overlap[1].imag() / tr.times[1];
    CHECK(std::abs(slope / omega - 1.0) < 0.02);
    CHECK(std::abs(slope / omega - 1.0) < 1e-3);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      CHECK(std::abs(tr.norm1[i] - 1.0) < 1e-8);
      CHECK(std::abs(tr.norm2[i] - 1.0) < 1e-8);
      CHECK(tr.p1[i] + tr.p2[i] == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(tr.overlap.back().imag() > 0.5 * std::sin(omega * tr.times.back()));
  }

  SUBCASE("time reversal") {
    gp::CoupledPropagator prop(gs.field, gs.field, base);
    prop.advance(400, dt);
    CHECK(prop.time() == doctest::Approx(4.0));
    CHECK(l2_distance(prop.mode1(), gs.field) > 1e-3);
    prop.advance(400, -dt);
    CHECK(l2_distance(prop.mode1(), gs.field) < 1e-6);
    CHECK(l2_distance(prop.mode2(), gs.field) < 1e-6);
  }

  SUBCASE("step convergence") {
    const auto coarse = gp::propagate_coupled(gs.field, base, 4.0, dt, 400);
    const auto fine = gp::propagate_coupled(gs.field, base, 4.0, dt / 2, 800);
    REQUIRE(coarse.times.back() == doctest::Approx(fine.times.back()));
    CHECK(std::abs(coarse.overlap.back().imag() - fine.overlap.back().imag()) < 1e-6);
  }

  SUBCASE("step guard") {
    CHECK_NOTHROW(gp::check_step_stability(gs.field, base.lambda, dt));
    CHECK_THROWS_AS(gp::check_step_stability(gs.field, base.lambda, 0.0), ConfigError);
    CHECK_THROWS_AS(gp::propagate_coupled(gs.field, base, 1.0, 2.0, 1), ConfigError);
  }
}
