#pragma once

#include <cstddef>
#include <span>

#include <fftw3.h>

#include "kho/common.hpp"

namespace kho::detail {

// Owns an in-place FFTW plan pair for one length. Planning goes through a
// process-wide mutex (the FFTW planner is not reentrant); execution uses the
// new-array interface and is safe from any thread.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();

  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const noexcept { return n_; }

  // Unnormalised sums with kernel exp(-2 pi i jk/n) and exp(+2 pi i jk/n).
  void forward(std::span<Complex> data) const;
  void backward(std::span<Complex> data) const;

 private:
  std::size_t n_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

}  // namespace kho::detail
