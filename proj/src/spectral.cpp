#include "kho/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kho/errors.hpp"
#include "kho/propagators.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace kho {
namespace {

double wrap_quasi_energy(Complex lambda) {
  double eps = -std::arg(lambda);
  if (eps <= -kPi) eps += kTwoPi;
  return eps;
}

}  // namespace

WaveFunction FloquetEigensystem::state(std::size_t index) const {
  const auto col = eigenvectors.col(static_cast<Eigen::Index>(index));
  return WaveFunction(grid, ComplexVector(col.data(), col.data() + col.size()));
}

ComplexMatrix build_floquet_matrix(const SystemParams& params, const GridSpec& grid,
                                   std::size_t cap) {
  const std::size_t n = grid.size();
  if (n > cap) {
    throw ResourceError("Floquet matrix dimension " + std::to_string(n) +
                        " exceeds the cap of " + std::to_string(cap));
  }
  params.validate();
  const FloquetPropagator propagator(grid, params);
  const auto dim = static_cast<Eigen::Index>(n);
  ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    u(j, j) = 1.0;
    propagator.apply(std::span<Complex>(u.col(j).data(), n));
  }
  return u;
}

FloquetEigensystem eigendecompose(const ComplexMatrix& u, const GridSpec& grid) {
  const auto dim = u.rows();
  if (dim != u.cols() || static_cast<std::size_t>(dim) != grid.size()) {
    throw DomainError("eigendecompose: matrix must be square with the grid's dimension");
  }
  const Eigen::VectorXd col_norms = u.colwise().norm();
  const double drift = (col_norms.array() - 1.0).abs().maxCoeff();
  if (!(drift <= 1e-5)) {
    throw PreconditionError("eigendecompose: matrix is not unitary (column norm drift " +
                            std::to_string(drift) + ")");
  }

  ComplexMatrix work = u;
  Eigen::VectorXcd w(dim);
  ComplexMatrix vr(dim, dim);
  Complex dummy_left;
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', static_cast<lapack_int>(dim), work.data(),
                    static_cast<lapack_int>(dim), w.data(), &dummy_left, 1, vr.data(),
                    static_cast<lapack_int>(dim));
  if (info < 0) {
    throw DecompositionError("zgeev rejected argument " + std::to_string(-info), 0);
  }
  if (info > 0) {
    // Eigenvalues info+1..n converged, but no eigenvectors were computed.
    throw DecompositionError("zgeev did not converge; " + std::to_string(dim - info) +
                                 " eigenvalues converged without eigenvectors",
                             0);
  }

  FloquetEigensystem sys{grid, {}, {}, {}, {}, {}, col_norms.maxCoeff()};
  std::vector<double> residuals(static_cast<std::size_t>(dim));
  std::vector<double> energies(static_cast<std::size_t>(dim));
  std::vector<double> quasi(static_cast<std::size_t>(dim));
  const double scale = 1.0 / std::sqrt(grid.spacing());
  vr.colwise().normalize();
  const ComplexMatrix uv = u * vr;
  for (Eigen::Index j = 0; j < dim; ++j) {
    residuals[j] = (uv.col(j) - w(j) * vr.col(j)).norm();
    quasi[j] = wrap_quasi_energy(w(j));
    const auto col = vr.col(j);
    ComplexVector amp(col.data(), col.data() + dim);
    for (auto& z : amp) z *= scale;
    energies[j] = observables(WaveFunction(grid, std::move(amp))).energy;
  }

  const double bound = kResidualTolerance * sys.matrix_norm;
  const auto certified = static_cast<std::size_t>(
      std::count_if(residuals.begin(), residuals.end(), [&](double r) { return r <= bound; }));
  if (certified != static_cast<std::size_t>(dim)) {
    throw DecompositionError(
        "eigendecompose: only " + std::to_string(certified) + " of " + std::to_string(dim) +
            " eigenpairs meet the residual bound " + std::to_string(bound),
        certified);
  }

  std::vector<std::size_t> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (energies[a] != energies[b]) return energies[a] < energies[b];
    return quasi[a] < quasi[b];
  });

  sys.eigenvectors.resize(dim, dim);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto src = static_cast<Eigen::Index>(order[i]);
    sys.eigenvalues.push_back(w(src));
    sys.quasi_energies.push_back(quasi[order[i]]);
    sys.mean_energies.push_back(energies[order[i]]);
    sys.residuals.push_back(residuals[order[i]]);
    sys.eigenvectors.col(static_cast<Eigen::Index>(i)) = vr.col(src) * scale;
  }
  return sys;
}

double inverse_participation_ratio(std::span<const Complex> v) {
  double sum2 = 0.0, sum4 = 0.0;
  for (const auto& z : v) {
    const double a = std::norm(z);
    sum2 += a;
    sum4 += a * a;
  }
  if (!(sum2 > 0.0)) throw DomainError("inverse_participation_ratio: zero vector");
  return sum4 / (sum2 * sum2);
}

std::vector<EigenstateMetrics> eigenstate_metrics(const FloquetEigensystem& sys) {
  std::vector<EigenstateMetrics> out;
  out.reserve(sys.size());
  const auto n = static_cast<std::size_t>(sys.eigenvectors.rows());
  for (std::size_t j = 0; j < sys.size(); ++j) {
    const auto col = sys.eigenvectors.col(static_cast<Eigen::Index>(j));
    out.push_back({sys.mean_energies[j], inverse_participation_ratio({col.data(), n})});
  }
  return out;
}

std::vector<double> level_spacings(std::span<const double> quasi_energies) {
  std::vector<double> sorted(quasi_energies.begin(), quasi_energies.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> gaps;
  if (sorted.empty()) return gaps;
  gaps.reserve(sorted.size());
  for (std::size_t i = 1; i < sorted.size(); ++i) gaps.push_back(sorted[i] - sorted[i - 1]);
  gaps.push_back(kTwoPi - (sorted.back() - sorted.front()));
  return gaps;
}

std::vector<double> level_spacings(const FloquetEigensystem& sys) {
  return level_spacings(sys.quasi_energies);
}

}  // namespace kho
