#include "kho/qstate.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "kho/errors.hpp"
#include "kho/frft.hpp"

namespace kho {

GridSpec::GridSpec(std::size_t n, double hbar) : n_(n), hbar_(hbar) {
  if (n < 4 || !std::has_single_bit(n)) {
    throw DomainError("grid size must be a power of two >= 4, got " +
                      std::to_string(n));
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw DomainError("hbar must be positive and finite");
  }
  spacing_ = std::sqrt(kTwoPi * hbar_ / static_cast<double>(n_));
}

WaveFunction::WaveFunction(GridSpec grid, ComplexVector amplitudes)
    : grid_(grid), amp_(std::move(amplitudes)) {
  if (amp_.size() != grid_.size()) {
    throw DomainError("amplitude count " + std::to_string(amp_.size()) +
                      " does not match grid size " + std::to_string(grid_.size()));
  }
  validate_signal(amp_);
}

double WaveFunction::norm() const {
  double sum = 0.0;
  for (const auto& z : amp_) sum += std::norm(z);
  return std::sqrt(sum * grid_.spacing());
}

void WaveFunction::normalize() {
  const double n = norm();
  if (!(n > 0.0)) throw DomainError("cannot normalise a zero state");
  for (auto& z : amp_) z /= n;
}

SystemParams SystemParams::resonance(int r, double mu, double k, double hbar) {
  if (r <= 0) throw DomainError("resonance R must be positive");
  SystemParams p;
  p.ratio = 1.0 / static_cast<double>(r);
  p.mu = mu;
  p.k = k;
  p.hbar = hbar;
  return p;
}

double SystemParams::theta_rot() const {
  const double angle = kTwoPi * ratio;
  return angle - kTwoPi * std::floor(angle / kTwoPi);
}

double SystemParams::t_kick() const { return kTwoPi * ratio / omega; }

void SystemParams::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("omega must be > 0");
  if (!(ratio > 0.0) || !std::isfinite(ratio)) throw DomainError("ratio must be > 0");
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw DomainError("mu must be >= 0");
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("k must be > 0");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw DomainError("hbar must be > 0");
}

WaveFunction coherent_state(const GridSpec& grid, double q0, double p0,
                            double omega0) {
  if (!(omega0 > 0.0) || !std::isfinite(q0) || !std::isfinite(p0)) {
    throw DomainError("coherent_state: need finite centre and omega0 > 0");
  }
  const double hbar = grid.hbar();
  const double sigma_q = std::sqrt(hbar / omega0);
  const double sigma_p = std::sqrt(hbar * omega0);
  const double limit = grid.extent();
  if (std::abs(q0) + 6.0 * sigma_q >= limit || std::abs(p0) + 6.0 * sigma_p >= limit) {
    throw DomainError("coherent_state: wavepacket at (" + std::to_string(q0) + ", " +
                      std::to_string(p0) + ") is not confined to the grid (extent " +
                      std::to_string(limit) + ")");
  }

  // alpha carries the squeeze so that <q> = q0 and <p> = p0 for any omega0;
  // with omega0 = 1 it is (q0 + i p0)/sqrt(2 hbar).
  const Complex alpha =
      Complex(std::sqrt(omega0) * q0, p0 / std::sqrt(omega0)) / std::sqrt(2.0 * hbar);
  const double prefactor = std::pow(omega0 / (kPi * hbar), 0.25);
  const Complex constant = -0.5 * std::norm(alpha) - 0.5 * alpha * alpha;
  const Complex linear = std::sqrt(2.0 * omega0 / hbar) * alpha;

  ComplexVector amp(grid.size());
  for (std::size_t i = 0; i < amp.size(); ++i) {
    const double q = grid.point(i);
    amp[i] = prefactor * std::exp(-omega0 * q * q / (2.0 * hbar) + linear * q + constant);
  }
  WaveFunction psi(grid, std::move(amp));
  psi.normalize();
  return psi;
}

ComplexVector momentum_amplitudes(const WaveFunction& psi) {
  return inverse_dft_centered(psi.amplitudes());
}

Observables observables(const WaveFunction& psi) {
  const auto& grid = psi.grid();
  const auto amp = psi.amplitudes();
  const auto phi = momentum_amplitudes(psi);

  double mass = 0.0, q1 = 0.0, q2 = 0.0, p_mass = 0.0, p1 = 0.0, p2 = 0.0;
  for (std::size_t i = 0; i < amp.size(); ++i) {
    const double x = grid.point(i);
    const double w = std::norm(amp[i]);
    const double v = std::norm(phi[i]);
    mass += w;
    q1 += w * x;
    q2 += w * x * x;
    p_mass += v;
    p1 += v * x;
    p2 += v * x * x;
  }
  if (!(mass > 0.0)) throw DomainError("observables: zero-norm state");

  Observables out;
  out.norm = std::sqrt(mass * grid.spacing());
  out.mean_q = q1 / mass;
  out.mean_q2 = q2 / mass;
  out.mean_p = p1 / p_mass;
  out.mean_p2 = p2 / p_mass;
  out.energy = 0.5 * (out.mean_p2 + out.mean_q2);
  return out;
}

}  // namespace kho
