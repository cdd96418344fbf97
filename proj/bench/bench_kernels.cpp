// Serial reference kernels against their OpenMP counterparts on the CI grid
// (32 x 32 x 256), plus the FFT pair and one coupled step.
#include <benchmark/benchmark.h>
#include <omp.h>

#include <cmath>
#include <vector>

#include "bmlab/fft.hpp"
#include "bmlab/gp_solver.hpp"
#include "bmlab/kernels.hpp"

namespace k = bmlab::kernels;
using cd = std::complex<double>;

namespace {

constexpr std::size_t kN = 32 * 32 * 256;

struct Data {
  std::vector<cd> a, b;
  std::vector<double> potential, out;
  Data() : a(kN), b(kN), potential(kN), out(kN) {
    for (std::size_t i = 0; i < kN; ++i) {
      a[i] = {std::sin(1e-3 * i), std::cos(2e-3 * i)};
      b[i] = {std::cos(3e-3 * i), 0.5};
      potential[i] = 1e-5 * static_cast<double>(i % 977);
    }
  }
};

Data& data() {
  static Data d;
  return d;
}

template <bool Parallel>
void BM_sum_abs2(benchmark::State& state) {
  auto& d = data();
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? k::parallel::sum_abs2(d.a) : k::serial::sum_abs2(d.a));
  state.SetItemsProcessed(state.iterations() * kN);
}

template <bool Parallel>
void BM_sum_conj_product(benchmark::State& state) {
  auto& d = data();
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? k::parallel::sum_conj_product(d.a, d.b)
                                      : k::serial::sum_conj_product(d.a, d.b));
  state.SetItemsProcessed(state.iterations() * kN);
}

template <bool Parallel>
void BM_coupled_phase_step(benchmark::State& state) {
  auto& d = data();
  const k::PairCouplings c{0.1, 0.09, 0.09, 0.08};
  for (auto _ : state) {
    if (Parallel)
      k::parallel::coupled_phase_step(d.a, d.b, d.potential, c, 1e-6);
    else
      k::serial::coupled_phase_step(d.a, d.b, d.potential, c, 1e-6);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * kN);
}

template <bool Parallel>
void BM_decay_factors(benchmark::State& state) {
  auto& d = data();
  for (auto _ : state) {
    if (Parallel)
      k::parallel::decay_factors(d.a, d.potential, 0.1, 1e-3, d.out);
    else
      k::serial::decay_factors(d.a, d.potential, 0.1, 1e-3, d.out);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * kN);
}

void BM_fft_pair(benchmark::State& state) {
  bmlab::configure_threads();
  bmlab::FftPlan plan({32, 32, 256});
  std::vector<cd> v = data().a;
  for (auto _ : state) {
    plan.forward(v);
    plan.backward(v);
    k::active::scale(v, 1.0 / kN);
  }
  state.SetItemsProcessed(state.iterations() * kN);
}

void BM_coupled_step(benchmark::State& state) {
  bmlab::configure_threads();
  const auto grid = bmlab::Grid3D::make(7.0, 32, 80.0, 256);
  bmlab::ComplexField psi(grid);
  for (std::size_t i = 0; i < grid.x.n; ++i)
    for (std::size_t j = 0; j < grid.y.n; ++j)
      for (std::size_t m = 0; m < grid.z.n; ++m) {
        const double x = grid.x.coord(i), y = grid.y.coord(j), z = grid.z.coord(m);
        psi[grid.index(i, j, m)] = std::exp(-0.5 * (x * x + y * y) - 0.001 * z * z);
      }
  k::active::scale(psi.values(), 1.0 / std::sqrt(bmlab::norm_squared(psi)));
  bmlab::units::ScaledConfig cfg;
  cfg.lambda = 0.01;
  cfg.a12 = 0.009;
  cfg.a11 = 1.3 * cfg.a12;
  cfg.a22 = 0.7 * cfg.a12;
  cfg.N = 1000;
  bmlab::gp::CoupledPropagator prop(psi, psi, cfg);
  for (auto _ : state) prop.advance(1, 0.01);
  state.SetItemsProcessed(state.iterations() * kN);
}

}  // namespace

BENCHMARK(BM_sum_abs2<false>)->Name("sum_abs2/serial");
BENCHMARK(BM_sum_abs2<true>)->Name("sum_abs2/parallel");
BENCHMARK(BM_sum_conj_product<false>)->Name("sum_conj_product/serial");
BENCHMARK(BM_sum_conj_product<true>)->Name("sum_conj_product/parallel");
BENCHMARK(BM_decay_factors<false>)->Name("decay_factors/serial");
BENCHMARK(BM_decay_factors<true>)->Name("decay_factors/parallel");
BENCHMARK(BM_coupled_phase_step<false>)->Name("coupled_phase_step/serial");
BENCHMARK(BM_coupled_phase_step<true>)->Name("coupled_phase_step/parallel");
BENCHMARK(BM_fft_pair)->Name("fft_forward_backward");
BENCHMARK(BM_coupled_step)->Name("coupled_step");

BENCHMARK_MAIN();
