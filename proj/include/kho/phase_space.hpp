#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "kho/qstate.hpp"

namespace kho {

struct PhasePoint {
  double q = 0.0;
  double p = 0.0;

  double energy() const noexcept { return 0.5 * (q * q + p * p); }
  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

/// One period of the classical kick map: p += mu k sin(k q), then the free
/// rotation (q, p) -> (q cos t + p sin t, -q sin t + p cos t), t = theta_rot.
PhasePoint classical_map_step(PhasePoint pt, const SystemParams& params);

/// Exact inverse of classical_map_step.
PhasePoint classical_map_inverse(PhasePoint pt, const SystemParams& params);

/// Gaussian cloud of classical particles. (seed, size, center, sigma)
/// determine the initial points.
class ClassicalEnsemble {
 public:
  ClassicalEnsemble(std::vector<PhasePoint> points, std::uint64_t seed,
                    PhasePoint center, double sigma);

  std::span<const PhasePoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }
  PhasePoint center() const noexcept { return center_; }
  double sigma() const noexcept { return sigma_; }

  /// Mean of (q^2 + p^2)/2, summed in index order.
  double mean_energy() const;

  /// Applies one map period to every point. Returns false if any coordinate
  /// became non-finite.
  bool advance(const SystemParams& params);

 private:
  std::vector<PhasePoint> points_;
  std::uint64_t seed_;
  PhasePoint center_;
  double sigma_;
};

/// M i.i.d. Gaussian points with per-axis standard deviation sqrt(hbar), the
/// marginal width of a coherent state's Husimi function.
ClassicalEnsemble sample_ensemble(PhasePoint center, std::size_t m, double hbar,
                                  std::uint64_t seed);

/// Mean ensemble energy before the first kick and after each of n_kicks
/// periods. Throws ConfinementError naming the kick at which a coordinate or
/// the mean energy overflowed.
std::vector<double> ensemble_energy_series(ClassicalEnsemble ensemble,
                                           const SystemParams& params,
                                           std::size_t n_kicks);

struct PoincareCloud {
  std::vector<PhasePoint> points;
  std::size_t clipped = 0;
};

/// Every point visited by n_iter periods of the map from each initial point
/// (initial points included) that lies inside the square |q|, |p| <= clip.
PoincareCloud poincare_section(std::span<const PhasePoint> initials,
                               const SystemParams& params, std::size_t n_iter,
                               double clip);

/// Husimi function sampled on a rectangular (q, p) lattice. values is stored
/// row-major with q as the slow index.
struct HusimiGrid {
  std::vector<double> q_axis;
  std::vector<double> p_axis;
  std::vector<double> values;

  double at(std::size_t iq, std::size_t ip) const { return values[iq * p_axis.size() + ip]; }
  /// Area of one lattice cell (uniform axes assumed).
  double cell_area() const;
  /// Riemann sum of the values times the cell area.
  double total() const;
};

/// n evenly spaced values from lo to hi inclusive.
std::vector<double> linear_axis(double lo, double hi, std::size_t n);

/// value(q, p) = |<coherent(q, p)|psi>|^2 / (2 pi hbar), inner products taken
/// directly on the grid. Throws DomainError if a lattice point's coherent
/// state does not fit on the grid.
HusimiGrid husimi(const WaveFunction& psi, std::span<const double> q_axis,
                  std::span<const double> p_axis);

}  // namespace kho
