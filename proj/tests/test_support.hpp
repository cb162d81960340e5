#pragma once

// Shared helpers for the unit and acceptance suites: random smooth states,
// norms and the Hermite-function oracle.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <vector>

#include "kho/common.hpp"
#include "kho/qstate.hpp"

namespace kho::test {

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double l2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline double grid_point(std::size_t i, std::size_t n) {
  return (static_cast<double>(i) - static_cast<double>(n / 2)) * std::sqrt(kTwoPi / n);
}

/// Random cubic polynomial times a displaced, boosted Gaussian, unit 2-norm.
/// Centre and boost stay within `reach` so the state is well inside the
/// phase-space square of an n-point grid.
inline ComplexVector smooth_vector(std::size_t n, std::mt19937_64& rng, double reach = 3.0) {
  std::uniform_real_distribution<double> centre(-reach, reach);
  std::normal_distribution<double> coeff;
  const double q0 = centre(rng), p0 = centre(rng);
  Complex c[4];
  for (auto& z : c) z = {coeff(rng), coeff(rng)};
  ComplexVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = grid_point(i, n) - q0;
    v[i] = (c[0] + y * (c[1] + y * (c[2] + y * c[3]))) *
           std::polar(std::exp(-0.5 * y * y), p0 * grid_point(i, n));
  }
  const double s = l2(v);
  for (auto& z : v) z /= s;
  return v;
}

inline ComplexVector random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexVector v(n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

/// Hermite functions psi_0..psi_{count-1} on the dimensionless grid, built by
/// the three-term recurrence. F_theta psi_n = exp(i n theta) psi_n.
inline std::vector<ComplexVector> hermite_functions(std::size_t n, std::size_t count) {
  std::vector<ComplexVector> out(count, ComplexVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double u = grid_point(i, n);
    double prev = 0.0;
    double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * u * u);
    for (std::size_t k = 0; k < count; ++k) {
      out[k][i] = cur;
      const double next = std::sqrt(2.0 / (k + 1.0)) * u * cur - std::sqrt(k / (k + 1.0)) * prev;
      prev = cur;
      cur = next;
    }
  }
  return out;
}

/// Best |<a|b>| / (|a||b|).
inline double overlap_modulus(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return std::abs(s) / (l2(a) * l2(b));
}

}  // namespace kho::test
