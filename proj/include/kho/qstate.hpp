#pragma once

#include <cstddef>
#include <span>

#include "kho/common.hpp"

namespace kho {

/// Centered position grid x_j = j*spacing, j = -n/2 .. n/2-1, with
/// spacing^2 * n = 2*pi*hbar. The momentum grid reached by the centered DFT
/// has the same points.
class GridSpec {
 public:
  /// n must be a power of two >= 4; hbar > 0.
  explicit GridSpec(std::size_t n, double hbar = 1.0);

  std::size_t size() const noexcept { return n_; }
  double hbar() const noexcept { return hbar_; }
  double spacing() const noexcept { return spacing_; }
  double point(std::size_t index) const noexcept {
    return (static_cast<double>(index) - static_cast<double>(n_ / 2)) * spacing_;
  }
  /// Largest |x_j| on the grid (the one-sided endpoint -n/2 * spacing).
  double extent() const noexcept { return static_cast<double>(n_ / 2) * spacing_; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  std::size_t n_;
  double hbar_;
  double spacing_;
};

/// Position-space wavefunction sampled on a grid. Normalisation uses the grid
/// measure: sum |amp|^2 * spacing = 1.
class WaveFunction {
 public:
  WaveFunction(GridSpec grid, ComplexVector amplitudes);

  const GridSpec& grid() const noexcept { return grid_; }
  std::span<const Complex> amplitudes() const noexcept { return amp_; }
  std::span<Complex> amplitudes() noexcept { return amp_; }

  double norm() const;
  /// Rescales to unit norm; throws DomainError on a zero state.
  void normalize();

 private:
  GridSpec grid_;
  ComplexVector amp_;
};

/// Physical parameters of the kicked oscillator in units m = 1.
///
/// `ratio` is omega/omega_kick (1/R for the integer resonances). One period
/// rotates phase space by theta_rot = 2*pi*ratio (mod 2*pi) and lasts
/// t_kick = 2*pi*ratio/omega.
struct SystemParams {
  double omega = 1.0;
  double ratio = 0.25;
  double mu = 0.0;
  double k = 1.0;
  double hbar = 1.0;

  static SystemParams resonance(int r, double mu, double k = 1.0, double hbar = 1.0);

  double theta_rot() const;
  double t_kick() const;
  /// Throws DomainError if any field is out of range.
  void validate() const;
};

/// Golden-mean frequency ratio (sqrt(5)+1)/2 used for the irrational runs.
inline constexpr double kGoldenRatio = std::numbers::phi;

/// Coherent state centred at (q0, p0) with width sqrt(hbar/omega0) in q,
/// normalised on the grid. Throws DomainError unless six standard deviations
/// around the centre fit inside the grid in both q and p.
WaveFunction coherent_state(const GridSpec& grid, double q0, double p0,
                            double omega0 = 1.0);

struct Observables {
  double norm = 0.0;
  double mean_q = 0.0;
  double mean_p = 0.0;
  double mean_q2 = 0.0;
  double mean_p2 = 0.0;
  /// (<p^2> + <q^2>) / 2.
  double energy = 0.0;
};

/// Moments of psi. Position moments use the position grid, momentum moments
/// the momentum amplitudes from inverse_dft_centered. Expectation values are
/// normalised by the state's norm. Throws DomainError on a zero state.
Observables observables(const WaveFunction& psi);

/// Momentum-space amplitudes phi(p_k) on the shared grid, normalised with the
/// same measure as the position amplitudes.
ComplexVector momentum_amplitudes(const WaveFunction& psi);

}  // namespace kho
