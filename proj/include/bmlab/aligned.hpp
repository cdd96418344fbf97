#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <vector>

namespace bmlab {

namespace detail {
void* fft_aligned_alloc(std::size_t bytes);
void fft_aligned_free(void* p) noexcept;
}  // namespace detail

/// Allocator returning FFTW-aligned storage so any buffer can be handed to a
/// plan created on a different buffer.
template <class T>
struct FftAllocator {
  using value_type = T;

  FftAllocator() noexcept = default;
  template <class U>
  FftAllocator(const FftAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    void* p = detail::fft_aligned_alloc(n * sizeof(T));
    if (!p) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept { detail::fft_aligned_free(p); }

  template <class U>
  bool operator==(const FftAllocator<U>&) const noexcept { return true; }
};

using cvector = std::vector<std::complex<double>, FftAllocator<std::complex<double>>>;

}  // namespace bmlab
