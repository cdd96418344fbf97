#pragma once

// Grid kernels used by the solvers. Two implementations with one signature
// set: `serial` is the plain reference, `parallel` uses OpenMP. Parallel
// reductions sum fixed-size blocks and then add the block partials in order,
// so their result does not depend on the thread count.

#include <complex>
#include <cstddef>
#include <span>

namespace bmlab::kernels {

using cd = std::complex<double>;

/// Nonlinear coefficients of the coupled two-mode step:
/// mode a sees aa*|a|^2 + ab*|b|^2, mode b sees ba*|a|^2 + bb*|b|^2.
struct PairCouplings {
  double aa, ab, ba, bb;
};

inline constexpr std::size_t kReductionBlock = 4096;

#define BMLAB_KERNEL_DECLS                                                                   \
  double sum_abs2(std::span<const cd> psi);                                                  \
  double sum_abs4(std::span<const cd> psi);                                                  \
  double sum_weighted_abs2(std::span<const cd> psi, std::span<const double> w);              \
  cd sum_conj_product(std::span<const cd> a, std::span<const cd> b);                         \
  void scale(std::span<cd> psi, double s);                                                   \
  void multiply(std::span<cd> psi, std::span<const double> factor);                          \
  void multiply(std::span<cd> psi, std::span<const cd> factor);                              \
  void decay_factors(std::span<const cd> psi, std::span<const double> potential,            \
                     double coupling, double h, std::span<double> out);                      \
  void phase_step(std::span<cd> psi, std::span<const double> potential, double coupling,     \
                  double h);                                                                 \
  void coupled_phase_step(std::span<cd> a, std::span<cd> b, std::span<const double> potential, \
                          const PairCouplings& c, double h);                                 \
  void add_potential_term(std::span<const cd> psi, std::span<const double> potential,        \
                          double coupling, std::span<cd> out);                               \
  void marginal_last_axis(std::span<const cd> psi, std::size_t outer, std::size_t inner,     \
                          std::span<double> out);                                            \
  void marginal_first_axis(std::span<const cd> psi, std::size_t outer, std::size_t inner,    \
                           std::span<double> out);

namespace serial {
BMLAB_KERNEL_DECLS
}  // namespace serial

namespace parallel {
BMLAB_KERNEL_DECLS
}  // namespace parallel

#undef BMLAB_KERNEL_DECLS

/// Implementation used by the library.
namespace active = parallel;

}  // namespace bmlab::kernels
