#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace bmlab {

/// In-place complex DFT over a row-major block of up to three axes. The
/// backward transform is unnormalized, as in FFTW.
class FftPlan {
 public:
  explicit FftPlan(std::array<std::size_t, 3> dims);
  ~FftPlan();
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const { return size_; }
  void forward(std::span<std::complex<double>> data) const;
  void backward(std::span<std::complex<double>> data) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::size_t size_ = 0;
};

/// Worker count used by the kernels and the FFTs: BMLAB_THREADS if set,
/// otherwise the OpenMP default. Call once before creating plans.
int configure_threads();

}  // namespace bmlab
