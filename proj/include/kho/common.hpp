#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace kho {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Largest dense matrix dimension built by default (a 4096^2 complex matrix
/// is 256 MiB).
inline constexpr std::size_t kDefaultMatrixCap = 4096;

}  // namespace kho
