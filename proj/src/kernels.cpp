#include "bmlab/kernels.hpp"

#include <cmath>
#include <vector>

namespace bmlab::kernels {

namespace {

inline cd unit_phase(double angle) {
  double s = 0.0, c = 0.0;
  ::sincos(angle, &s, &c);
  return {c, s};
}

// psi *= exp(-i h v)
inline void rotate(cd& psi, double h, double v) { psi *= unit_phase(-h * v); }

std::size_t block_count(std::size_t n) { return (n + kReductionBlock - 1) / kReductionBlock; }

// Deterministic blocked reduction: fn(i) summed within fixed blocks, blocks in order.
template <class T, class Fn>
T blocked_sum(std::size_t n, Fn fn) {
  const std::size_t nb = block_count(n);
  std::vector<T> partial(nb, T{});
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t lo = b * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    T acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += fn(i);
    partial[b] = acc;
  }
  T total{};
  for (const T& p : partial) total += p;
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------
// serial reference
// ---------------------------------------------------------------------------
namespace serial {

double sum_abs2(std::span<const cd> psi) {
  double s = 0.0;
  for (const cd& v : psi) s += std::norm(v);
  return s;
}

double sum_abs4(std::span<const cd> psi) {
  double s = 0.0;
  for (const cd& v : psi) {
    const double d = std::norm(v);
    s += d * d;
  }
  return s;
}

double sum_weighted_abs2(std::span<const cd> psi, std::span<const double> w) {
  double s = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) s += w[i] * std::norm(psi[i]);
  return s;
}

cd sum_conj_product(std::span<const cd> a, std::span<const cd> b) {
  cd s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

void scale(std::span<cd> psi, double s) {
  for (cd& v : psi) v *= s;
}

void multiply(std::span<cd> psi, std::span<const double> factor) {
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= factor[i];
}

void multiply(std::span<cd> psi, std::span<const cd> factor) {
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= factor[i];
}

void decay_factors(std::span<const cd> psi, std::span<const double> potential, double coupling,
                   double h, std::span<double> out) {
  for (std::size_t i = 0; i < psi.size(); ++i)
    out[i] = std::exp(-h * (potential[i] + coupling * std::norm(psi[i])));
}

void phase_step(std::span<cd> psi, std::span<const double> potential, double coupling, double h) {
  for (std::size_t i = 0; i < psi.size(); ++i)
    rotate(psi[i], h, potential[i] + coupling * std::norm(psi[i]));
}

void coupled_phase_step(std::span<cd> a, std::span<cd> b, std::span<const double> potential,
                        const PairCouplings& c, double h) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double na = std::norm(a[i]);
    const double nb = std::norm(b[i]);
    rotate(a[i], h, potential[i] + c.aa * na + c.ab * nb);
    rotate(b[i], h, potential[i] + c.ba * na + c.bb * nb);
  }
}

void add_potential_term(std::span<const cd> psi, std::span<const double> potential,
                        double coupling, std::span<cd> out) {
  for (std::size_t i = 0; i < psi.size(); ++i)
    out[i] += (potential[i] + coupling * std::norm(psi[i])) * psi[i];
}

void marginal_last_axis(std::span<const cd> psi, std::size_t outer, std::size_t inner,
                        std::span<double> out) {
  for (std::size_t k = 0; k < inner; ++k) out[k] = 0.0;
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t k = 0; k < inner; ++k) out[k] += std::norm(psi[o * inner + k]);
}

void marginal_first_axis(std::span<const cd> psi, std::size_t outer, std::size_t inner,
                         std::span<double> out) {
  for (std::size_t o = 0; o < outer; ++o) {
    double s = 0.0;
    for (std::size_t k = 0; k < inner; ++k) s += std::norm(psi[o * inner + k]);
    out[o] = s;
  }
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP
// ---------------------------------------------------------------------------
namespace parallel {

double sum_abs2(std::span<const cd> psi) {
  return blocked_sum<double>(psi.size(), [&](std::size_t i) { return std::norm(psi[i]); });
}

double sum_abs4(std::span<const cd> psi) {
  return blocked_sum<double>(psi.size(), [&](std::size_t i) {
    const double d = std::norm(psi[i]);
    return d * d;
  });
}

double sum_weighted_abs2(std::span<const cd> psi, std::span<const double> w) {
  return blocked_sum<double>(psi.size(), [&](std::size_t i) { return w[i] * std::norm(psi[i]); });
}

cd sum_conj_product(std::span<const cd> a, std::span<const cd> b) {
  return blocked_sum<cd>(a.size(), [&](std::size_t i) { return std::conj(a[i]) * b[i]; });
}

void scale(std::span<cd> psi, double s) {
  const std::size_t n = psi.size();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) psi[i] *= s;
}

void multiply(std::span<cd> psi, std::span<const double> factor) {
  const std::size_t n = psi.size();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) psi[i] *= factor[i];
}

void multiply(std::span<cd> psi, std::span<const cd> factor) {
  const std::size_t n = psi.size();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) psi[i] *= factor[i];
}

void decay_factors(std::span<const cd> psi, std::span<const double> potential, double coupling,
                   double h, std::span<double> out) {
  const std::size_t n = psi.size();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::exp(-h * (potential[i] + coupling * std::norm(psi[i])));
}

void phase_step(std::span<cd> psi, std::span<const double> potential, double coupling, double h) {
  const std::size_t n = psi.size();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i)
    rotate(psi[i], h, potential[i] + coupling * std::norm(psi[i]));
}

void coupled_phase_step(std::span<cd> a, std::span<cd> b, std::span<const double> potential,
                        const PairCouplings& c, double h) {
  const std::size_t n = a.size();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    const double na = std::norm(a[i]);
    const double nb = std::norm(b[i]);
    rotate(a[i], h, potential[i] + c.aa * na + c.ab * nb);
    rotate(b[i], h, potential[i] + c.ba * na + c.bb * nb);
  }
}

void add_potential_term(std::span<const cd> psi, std::span<const double> potential,
                        double coupling, std::span<cd> out) {
  const std::size_t n = psi.size();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i)
    out[i] += (potential[i] + coupling * std::norm(psi[i])) * psi[i];
}

void marginal_last_axis(std::span<const cd> psi, std::size_t outer, std::size_t inner,
                        std::span<double> out) {
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < inner; ++k) {
    double s = 0.0;
    for (std::size_t o = 0; o < outer; ++o) s += std::norm(psi[o * inner + k]);
    out[k] = s;
  }
}

void marginal_first_axis(std::span<const cd> psi, std::size_t outer, std::size_t inner,
                         std::span<double> out) {
#pragma omp parallel for schedule(static)
  for (std::size_t o = 0; o < outer; ++o) {
    double s = 0.0;
    for (std::size_t k = 0; k < inner; ++k) s += std::norm(psi[o * inner + k]);
    out[o] = s;
  }
}

}  // namespace parallel

}  // namespace bmlab::kernels
