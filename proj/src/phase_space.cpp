#include "kho/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "kho/errors.hpp"

namespace kho {

PhasePoint classical_map_step(PhasePoint pt, const SystemParams& params) {
  const double theta = params.theta_rot();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double p = pt.p + params.mu * params.k * std::sin(params.k * pt.q);
  return {pt.q * c + p * s, -pt.q * s + p * c};
}

PhasePoint classical_map_inverse(PhasePoint pt, const SystemParams& params) {
  const double theta = params.theta_rot();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double q = pt.q * c - pt.p * s;
  const double p = pt.q * s + pt.p * c;
  return {q, p - params.mu * params.k * std::sin(params.k * q)};
}

ClassicalEnsemble::ClassicalEnsemble(std::vector<PhasePoint> points, std::uint64_t seed,
                                     PhasePoint center, double sigma)
    : points_(std::move(points)), seed_(seed), center_(center), sigma_(sigma) {
  if (points_.empty()) throw DomainError("classical ensemble needs at least one point");
}

double ClassicalEnsemble::mean_energy() const {
  double sum = 0.0;
  for (const auto& pt : points_) sum += pt.energy();
  return sum / static_cast<double>(points_.size());
}

bool ClassicalEnsemble::advance(const SystemParams& params) {
  const double theta = params.theta_rot();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double impulse = params.mu * params.k;
  bool finite = true;
  for (auto& pt : points_) {
    const double p = pt.p + impulse * std::sin(params.k * pt.q);
    pt = {pt.q * c + p * s, -pt.q * s + p * c};
    finite = finite && std::isfinite(pt.q) && std::isfinite(pt.p);
  }
  return finite;
}

ClassicalEnsemble sample_ensemble(PhasePoint center, std::size_t m, double hbar,
                                  std::uint64_t seed) {
  if (m == 0) throw DomainError("sample_ensemble: M must be >= 1");
  if (!(hbar > 0.0)) throw DomainError("sample_ensemble: hbar must be > 0");
  const double sigma = std::sqrt(hbar);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  std::vector<PhasePoint> points(m);
  for (auto& pt : points) {
    pt.q = center.q + normal(rng);
    pt.p = center.p + normal(rng);
  }
  return ClassicalEnsemble(std::move(points), seed, center, sigma);
}

std::vector<double> ensemble_energy_series(ClassicalEnsemble ensemble,
                                           const SystemParams& params,
                                           std::size_t n_kicks) {
  std::vector<double> series;
  series.reserve(n_kicks + 1);
  for (std::size_t kick = 0; kick <= n_kicks; ++kick) {
    const bool moved = kick == 0 || ensemble.advance(params);
    const double energy = ensemble.mean_energy();
    if (!moved || !std::isfinite(energy)) {
      throw ConfinementError(
          "classical trajectory overflowed at kick " + std::to_string(kick), kick);
    }
    series.push_back(energy);
  }
  return series;
}

PoincareCloud poincare_section(std::span<const PhasePoint> initials,
                               const SystemParams& params, std::size_t n_iter,
                               double clip) {
  if (n_iter == 0) throw DomainError("poincare_section: n_iter must be >= 1");
  if (!(clip > 0.0)) throw DomainError("poincare_section: clip must be > 0");
  PoincareCloud cloud;
  cloud.points.reserve(initials.size() * (n_iter + 1));
  for (PhasePoint pt : initials) {
    for (std::size_t it = 0; it <= n_iter; ++it) {
      if (it > 0) pt = classical_map_step(pt, params);
      if (std::abs(pt.q) <= clip && std::abs(pt.p) <= clip) {
        cloud.points.push_back(pt);
      } else {
        ++cloud.clipped;
      }
    }
  }
  return cloud;
}

double HusimiGrid::cell_area() const {
  const double dq = q_axis.size() > 1 ? q_axis[1] - q_axis[0] : 0.0;
  const double dp = p_axis.size() > 1 ? p_axis[1] - p_axis[0] : 0.0;
  return dq * dp;
}

double HusimiGrid::total() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * cell_area();
}

std::vector<double> linear_axis(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> axis(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) axis[i] = lo + step * static_cast<double>(i);
  axis.back() = hi;
  return axis;
}

HusimiGrid husimi(const WaveFunction& psi, std::span<const double> q_axis,
                  std::span<const double> p_axis) {
  const auto& grid = psi.grid();
  const double hbar = grid.hbar();
  const double width = std::sqrt(hbar);
  const double limit = grid.extent();
  auto check = [&](double v, const char* axis) {
    if (!std::isfinite(v) || std::abs(v) + 6.0 * width >= limit) {
      throw DomainError(std::string("husimi: ") + axis + " = " + std::to_string(v) +
                        " is outside the confined region of the grid");
    }
  };
  for (double q : q_axis) check(q, "q");
  for (double p : p_axis) check(p, "p");

  HusimiGrid out;
  out.q_axis.assign(q_axis.begin(), q_axis.end());
  out.p_axis.assign(p_axis.begin(), p_axis.end());
  out.values.resize(q_axis.size() * p_axis.size());

  // Window of +-9 widths: the Gaussian is below 3e-18 outside it.
  const double dx = grid.spacing();
  const double reach = 9.0 * width;
  const double norm_g = std::pow(kPi * hbar, -0.25) * dx;
  const auto amp = psi.amplitudes();
  const double offset = static_cast<double>(grid.size() / 2);
  ComplexVector weighted;
  std::vector<double> xs;

  for (std::size_t iq = 0; iq < q_axis.size(); ++iq) {
    const double q = q_axis[iq];
    const auto lo = static_cast<std::size_t>(std::max(0.0, std::ceil((q - reach) / dx + offset)));
    const auto hi = std::min(grid.size() - 1,
                             static_cast<std::size_t>(std::floor((q + reach) / dx + offset)));
    weighted.clear();
    xs.clear();
    for (std::size_t j = lo; j <= hi; ++j) {
      const double x = grid.point(j);
      const double y = x - q;
      weighted.push_back(norm_g * std::exp(-y * y / (2.0 * hbar)) * amp[j]);
      xs.push_back(x);
    }
    for (std::size_t ip = 0; ip < p_axis.size(); ++ip) {
      const double p = p_axis[ip];
      Complex overlap = 0.0;
      for (std::size_t t = 0; t < xs.size(); ++t) {
        overlap += weighted[t] * std::polar(1.0, -p * xs[t] / hbar);
      }
      out.values[iq * p_axis.size() + ip] = std::norm(overlap) / (kTwoPi * hbar);
    }
  }
  return out;
}

}  // namespace kho
