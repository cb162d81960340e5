#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kho/common.hpp"
#include "kho/qstate.hpp"

namespace kho {

/// Certified eigendecomposition of a one-period Floquet matrix.
///
/// Eigenpairs are sorted by ascending mean energy of the eigenvector, with the
/// quasi-energy as tie-break. lambda_j = exp(-i eps_j), eps_j in (-pi, pi].
/// Eigenvector columns are normalised on the grid measure; residuals
/// ||U v - lambda v|| are taken for the unit 2-norm vector.
struct FloquetEigensystem {
  GridSpec grid;
  std::vector<Complex> eigenvalues;
  std::vector<double> quasi_energies;
  std::vector<double> mean_energies;
  ComplexMatrix eigenvectors;
  std::vector<double> residuals;
  /// Largest column 2-norm of U, the scale for the residual bound.
  double matrix_norm = 0.0;

  std::size_t size() const noexcept { return eigenvalues.size(); }
  WaveFunction state(std::size_t index) const;
};

/// Column j is floquet_step applied to the j-th basis vector, so U*v equals
/// the fast propagator applied to v. Throws ResourceError above `cap`.
ComplexMatrix build_floquet_matrix(const SystemParams& params, const GridSpec& grid,
                                   std::size_t cap = kDefaultMatrixCap);

inline constexpr double kResidualTolerance = 1e-7;

/// Dense complex eigendecomposition (LAPACK zgeev) with residual
/// certification.
///
/// Throws PreconditionError if some column norm of U is more than 1e-5 away
/// from one, and DecompositionError (with the certified pair count) if the
/// solver does not converge or a residual exceeds kResidualTolerance * ||U||.
FloquetEigensystem eigendecompose(const ComplexMatrix& u, const GridSpec& grid);

struct EigenstateMetrics {
  double mean_energy = 0.0;
  double ipr = 0.0;
};

/// sum |v_j|^4 / (sum |v_j|^2)^2 over the position grid: 1 for a single site,
/// 1/n for a uniform vector.
double inverse_participation_ratio(std::span<const Complex> v);

std::vector<EigenstateMetrics> eigenstate_metrics(const FloquetEigensystem& sys);

/// Gaps between circularly sorted quasi-energies, wrap-around gap last. The
/// gaps sum to 2*pi.
std::vector<double> level_spacings(std::span<const double> quasi_energies);
std::vector<double> level_spacings(const FloquetEigensystem& sys);

}  // namespace kho
