#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "kho/common.hpp"

namespace kho {

namespace detail {
class FftPlan;
}

/// Angle of a fractional Fourier transform in radians. pi/2 is the ordinary
/// (centered, unitary) Fourier transform; the value is taken modulo 2*pi.
struct TransformAngle {
  double radians = 0.0;
};

// Samples live on the centered grid x_j = j*d, j = -n/2 .. n/2-1, with
// d^2 * n = 2*pi*hbar. In units of sqrt(hbar) the transforms below depend on
// n only, so none of them take hbar.

/// Throws DomainError unless the length is even and >= 4 and every sample is
/// finite.
void validate_signal(std::span<const Complex> signal);

/// Unitary centered DFT with kernel exp(+2*pi*i*j*k/n)/sqrt(n). Equals the
/// fractional transform at angle pi/2.
ComplexVector dft_centered(std::span<const Complex> signal);

/// Inverse of dft_centered. Maps a position-space wavefunction to its
/// momentum-space amplitudes on the same grid.
ComplexVector inverse_dft_centered(std::span<const Complex> signal);

/// x -> -x on the centered grid (index j -> -j mod n). Equals the fractional
/// transform at angle pi.
ComplexVector parity(std::span<const Complex> signal);

/// In-place centered Fourier transforms for a fixed length. Immutable once
/// built; `dft`/`idft` may be called concurrently.
class CenteredFourier {
 public:
  explicit CenteredFourier(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  void dft(std::span<Complex> data) const;
  void idft(std::span<Complex> data) const;

 private:
  std::size_t n_;
  std::shared_ptr<const detail::FftPlan> plan_;
};

/// Precomputed fractional Fourier transform of one length and angle.
///
/// The angle is folded as theta = m*pi/2 + r with |r| <= pi/4. The integer
/// part is applied exactly (identity, DFT, parity or inverse DFT). The residual
/// is applied through the three-shear factorisation of a phase-space
/// rotation,
///
///   F_r = e^{-ir/2} C(a) K(b) C(a),  a = -tan(r/2), b = -sin(r),
///
/// where C(a) multiplies by exp(-i a x^2/2) in position space and K(b) by
/// exp(-i b p^2/2) in momentum space (a chirp convolution done with two FFTs).
/// Every factor is a unitary matrix, so the discrete transform is unitary to
/// rounding; it agrees with the continuous transform for states that stay
/// inside the grid's phase-space square. Residuals below 1e-9 are dropped.
class FrftPlan {
 public:
  FrftPlan(std::size_t n, TransformAngle theta);

  std::size_t size() const noexcept { return fourier_.size(); }
  double angle() const noexcept { return theta_; }

  void apply(std::span<Complex> data) const;
  ComplexVector operator()(std::span<const Complex> signal) const;

 private:
  CenteredFourier fourier_;
  double theta_;
  int quarter_turns_ = 0;
  bool has_residual_ = false;
  ComplexVector position_chirp_;
  ComplexVector momentum_chirp_;
};

/// Fast fractional Fourier transform, O(n log n).
ComplexVector frft(std::span<const Complex> signal, TransformAngle theta);

/// Dense matrix whose column j is frft(e_j, theta). Throws ResourceError when
/// n > cap.
ComplexMatrix frft_matrix(std::size_t n, TransformAngle theta,
                          std::size_t cap = kDefaultMatrixCap);

}  // namespace kho
