#include "kho/frft.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "kho/errors.hpp"

namespace kho {
namespace {

constexpr double kResidualCutoff = 1e-9;

void validate_length(std::size_t n) {
  if (n < 4 || n % 2 != 0) {
    throw DomainError("signal length must be even and >= 4, got " +
                      std::to_string(n));
  }
}

// Half-length rotation; for even n this is both fftshift and ifftshift.
void swap_halves(std::span<Complex> data) {
  std::rotate(data.begin(), data.begin() + data.size() / 2, data.end());
}

void scale(std::span<Complex> data, double factor) {
  for (auto& z : data) z *= factor;
}

void parity_in_place(std::span<Complex> data) {
  // Index 0 holds j = -n/2, which maps to itself modulo n.
  std::reverse(data.begin() + 1, data.end());
}

// Dimensionless squared grid coordinate (x_j / sqrt(hbar))^2 = 2*pi*j^2/n.
double scaled_square(std::size_t index, std::size_t n) {
  const double j = static_cast<double>(index) - static_cast<double>(n / 2);
  return kTwoPi * j * j / static_cast<double>(n);
}

ComplexVector chirp(std::size_t n, double curvature, Complex prefactor) {
  ComplexVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = prefactor * std::polar(1.0, -0.5 * curvature * scaled_square(i, n));
  }
  return out;
}

}  // namespace

void validate_signal(std::span<const Complex> signal) {
  validate_length(signal.size());
  for (const auto& z : signal) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw DomainError("signal contains non-finite amplitudes");
    }
  }
}

CenteredFourier::CenteredFourier(std::size_t n)
    : n_(n), plan_((validate_length(n), std::make_shared<const detail::FftPlan>(n))) {}

void CenteredFourier::dft(std::span<Complex> data) const {
  swap_halves(data);
  plan_->backward(data);
  swap_halves(data);
  scale(data, 1.0 / std::sqrt(static_cast<double>(n_)));
}

void CenteredFourier::idft(std::span<Complex> data) const {
  swap_halves(data);
  plan_->forward(data);
  swap_halves(data);
  scale(data, 1.0 / std::sqrt(static_cast<double>(n_)));
}

ComplexVector dft_centered(std::span<const Complex> signal) {
  validate_signal(signal);
  ComplexVector out(signal.begin(), signal.end());
  CenteredFourier(out.size()).dft(out);
  return out;
}

ComplexVector inverse_dft_centered(std::span<const Complex> signal) {
  validate_signal(signal);
  ComplexVector out(signal.begin(), signal.end());
  CenteredFourier(out.size()).idft(out);
  return out;
}

ComplexVector parity(std::span<const Complex> signal) {
  validate_length(signal.size());
  ComplexVector out(signal.begin(), signal.end());
  parity_in_place(out);
  return out;
}

FrftPlan::FrftPlan(std::size_t n, TransformAngle theta)
    : fourier_(n), theta_(theta.radians) {
  if (!std::isfinite(theta_)) throw DomainError("transform angle is not finite");
  const double reduced = theta_ - kTwoPi * std::floor(theta_ / kTwoPi);
  const double turns = std::round(reduced / (kPi / 2));
  const double residual = reduced - turns * (kPi / 2);
  quarter_turns_ = static_cast<int>(turns) % 4;
  if (std::abs(residual) < kResidualCutoff) return;

  has_residual_ = true;
  // Rotation by -residual in phase space, then the zero-point phase.
  const double shear_q = std::tan(-residual / 2);
  const double shear_p = std::sin(-residual);
  position_chirp_ = chirp(n, shear_q, 1.0);
  momentum_chirp_ = chirp(n, shear_p, std::polar(1.0, -residual / 2));
}

void FrftPlan::apply(std::span<Complex> data) const {
  if (data.size() != size()) {
    throw DomainError("signal length " + std::to_string(data.size()) +
                      " does not match plan length " + std::to_string(size()));
  }
  switch (quarter_turns_) {
    case 1: fourier_.dft(data); break;
    case 2: parity_in_place(data); break;
    case 3: fourier_.idft(data); break;
    default: break;
  }
  if (!has_residual_) return;

  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= position_chirp_[i];
  fourier_.idft(data);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= momentum_chirp_[i];
  fourier_.dft(data);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= position_chirp_[i];
}

ComplexVector FrftPlan::operator()(std::span<const Complex> signal) const {
  ComplexVector out(signal.begin(), signal.end());
  apply(out);
  return out;
}

ComplexVector frft(std::span<const Complex> signal, TransformAngle theta) {
  validate_signal(signal);
  if (theta.radians == 0.0) return {signal.begin(), signal.end()};
  return FrftPlan(signal.size(), theta)(signal);
}

ComplexMatrix frft_matrix(std::size_t n, TransformAngle theta, std::size_t cap) {
  if (n > cap) {
    throw ResourceError("frft_matrix: n = " + std::to_string(n) +
                        " exceeds the cap of " + std::to_string(cap));
  }
  const FrftPlan plan(n, theta);
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(n),
                                        static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    m(j, j) = 1.0;
    plan.apply(std::span<Complex>(m.col(j).data(), n));
  }
  return m;
}

}  // namespace kho
