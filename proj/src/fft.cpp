#include "bmlab/fft.hpp"

#include <fftw3.h>
#include <omp.h>

#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>

#include "bmlab/aligned.hpp"

namespace bmlab {

namespace detail {
void* fft_aligned_alloc(std::size_t bytes) { return fftw_malloc(bytes); }
void fft_aligned_free(void* p) noexcept { fftw_free(p); }
}  // namespace detail

namespace {
// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

int& thread_count() {
  static int n = 0;
  return n;
}

void ensure_threads_initialized() {
  static bool done = false;
  if (done) return;
  fftw_init_threads();
  if (thread_count() == 0) thread_count() = omp_get_max_threads();
  fftw_plan_with_nthreads(thread_count());
  done = true;
}
}  // namespace

int configure_threads() {
  std::lock_guard lock(planner_mutex());
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("BMLAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0 && cap < n) n = cap;
  }
  omp_set_num_threads(n);
  thread_count() = n;
  fftw_init_threads();
  fftw_plan_with_nthreads(n);
  return n;
}

struct FftPlan::Impl {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

FftPlan::FftPlan(std::array<std::size_t, 3> dims) : impl_(std::make_unique<Impl>()) {
  int n[3];
  int rank = 0;
  size_ = 1;
  for (std::size_t d : dims) {
    size_ *= d;
    if (d > 1) n[rank++] = static_cast<int>(d);
  }
  if (rank == 0) throw std::invalid_argument("FftPlan: empty transform");
  cvector scratch(size_);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  std::lock_guard lock(planner_mutex());
  ensure_threads_initialized();
  // FFTW_ESTIMATE keeps the plan, and hence the rounding, identical run to run.
  impl_->fwd = fftw_plan_dft(rank, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft(rank, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!impl_->fwd || !impl_->bwd) throw std::runtime_error("FftPlan: FFTW planning failed");
}

FftPlan::~FftPlan() = default;

FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

void FftPlan::forward(std::span<std::complex<double>> data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(impl_->fwd, p, p);
}

void FftPlan::backward(std::span<std::complex<double>> data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(impl_->bwd, p, p);
}

}  // namespace bmlab
