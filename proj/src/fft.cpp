#include "fft.hpp"

#include <mutex>
#include <stdexcept>

namespace kho::detail {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::span<Complex> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
  // FFTW_ESTIMATE keeps the chosen algorithm, and therefore every rounding
  // pattern, identical from run to run.
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  const int len = static_cast<int>(n);
  std::lock_guard lock(planner_mutex());
  auto* scratch = fftw_alloc_complex(n);
  forward_ = fftw_plan_dft_1d(len, scratch, scratch, FFTW_FORWARD, flags);
  backward_ = fftw_plan_dft_1d(len, scratch, scratch, FFTW_BACKWARD, flags);
  fftw_free(scratch);
  if (forward_ == nullptr || backward_ == nullptr) {
    if (forward_ != nullptr) fftw_destroy_plan(forward_);
    if (backward_ != nullptr) fftw_destroy_plan(backward_);
    throw std::runtime_error("FFTW failed to create a plan");
  }
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(forward_);
  fftw_destroy_plan(backward_);
}

void FftPlan::forward(std::span<Complex> data) const {
  fftw_execute_dft(forward_, as_fftw(data), as_fftw(data));
}

void FftPlan::backward(std::span<Complex> data) const {
  fftw_execute_dft(backward_, as_fftw(data), as_fftw(data));
}

}  // namespace kho::detail
