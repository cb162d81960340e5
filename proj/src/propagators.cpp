#include "kho/propagators.hpp"

#include <cmath>
#include <optional>
#include <sstream>

namespace kho {
namespace {

ComplexVector kick_phases(const GridSpec& grid, const SystemParams& params, Complex extra) {
  ComplexVector phases(grid.size());
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const double v = params.mu * std::cos(params.k * grid.point(i));
    phases[i] = extra * std::polar(1.0, -v / params.hbar);
  }
  return phases;
}

void check_grid(const WaveFunction& psi, const SystemParams& params) {
  params.validate();
  if (psi.grid().hbar() != params.hbar) {
    throw DomainError("wavefunction grid hbar differs from SystemParams.hbar");
  }
}

struct Snapshot {
  double energy = 0.0;
  TailMass tails;
};

// Energy and tail masses from one pair of position/momentum sweeps.
Snapshot snapshot(std::span<const Complex> amp, const GridSpec& grid,
                  const CenteredFourier& fourier, ComplexVector& scratch, double band) {
  scratch.assign(amp.begin(), amp.end());
  fourier.idft(scratch);
  const double edge = (1.0 - band) * grid.extent();
  double mass = 0.0, q2 = 0.0, tail_q = 0.0, p_mass = 0.0, p2 = 0.0, tail_p = 0.0;
  for (std::size_t i = 0; i < amp.size(); ++i) {
    const double x = grid.point(i);
    const double w = std::norm(amp[i]);
    const double v = std::norm(scratch[i]);
    mass += w;
    q2 += w * x * x;
    p_mass += v;
    p2 += v * x * x;
    if (std::abs(x) >= edge) {
      tail_q += w;
      tail_p += v;
    }
  }
  if (!(mass > 0.0)) throw DomainError("zero-norm state during evolution");
  return {0.5 * (q2 / mass + p2 / p_mass), {tail_q / mass, tail_p / p_mass}};
}

EnergySeries evolve_impl(const WaveFunction& psi0, const SystemParams& params,
                         std::size_t n_kicks, std::optional<ClassicalEnsemble> ensemble,
                         const ConfinementPolicy& policy) {
  check_grid(psi0, params);
  const auto& grid = psi0.grid();
  const FloquetPropagator propagator(grid, params);
  const CenteredFourier fourier(grid.size());

  ComplexVector amp(psi0.amplitudes().begin(), psi0.amplitudes().end());
  ComplexVector scratch;
  EnergySeries series;
  series.quantum.reserve(n_kicks + 1);
  if (ensemble) series.classical.reserve(n_kicks + 1);

  for (std::size_t kick = 0; kick <= n_kicks; ++kick) {
    if (kick > 0) {
      propagator.apply(amp);
      if (ensemble && !ensemble->advance(params)) {
        throw TruncatedEvolution(
            "classical trajectory overflowed at kick " + std::to_string(kick), kick,
            series);
      }
    }
    const Snapshot snap = snapshot(amp, grid, fourier, scratch, policy.band);
    if (snap.tails.position > policy.threshold || snap.tails.momentum > policy.threshold) {
      std::ostringstream msg;
      msg << "state left the grid at kick " << kick << " (tail mass q=" << snap.tails.position
          << ", p=" << snap.tails.momentum << " in the outer " << policy.band * 100
          << "% exceeds " << policy.threshold << ")";
      throw TruncatedEvolution(msg.str(), kick, series);
    }
    const double classical = ensemble ? ensemble->mean_energy() : 0.0;
    if (!std::isfinite(classical)) {
      throw TruncatedEvolution(
          "classical ensemble energy overflowed at kick " + std::to_string(kick), kick, series);
    }
    series.quantum.push_back(snap.energy);
    if (ensemble) series.classical.push_back(classical);
  }
  return series;
}

}  // namespace

WaveFunction apply_kick(const WaveFunction& psi, const SystemParams& params) {
  check_grid(psi, params);
  const auto phases = kick_phases(psi.grid(), params, 1.0);
  WaveFunction out = psi;
  auto amp = out.amplitudes();
  for (std::size_t i = 0; i < amp.size(); ++i) amp[i] *= phases[i];
  return out;
}

FloquetPropagator::FloquetPropagator(const GridSpec& grid, const SystemParams& params)
    : grid_(grid),
      kick_(kick_phases(grid, params, std::polar(1.0, -params.theta_rot() / 2))),
      rotation_(grid.size(), TransformAngle{-params.theta_rot()}) {}

void FloquetPropagator::apply(std::span<Complex> amplitudes) const {
  if (amplitudes.size() != kick_.size()) {
    throw DomainError("FloquetPropagator: amplitude count does not match the grid");
  }
  for (std::size_t i = 0; i < amplitudes.size(); ++i) amplitudes[i] *= kick_[i];
  rotation_.apply(amplitudes);
}

WaveFunction FloquetPropagator::operator()(const WaveFunction& psi) const {
  if (!(psi.grid() == grid_)) throw DomainError("FloquetPropagator: grid mismatch");
  WaveFunction out = psi;
  apply(out.amplitudes());
  return out;
}

WaveFunction floquet_step(const WaveFunction& psi, const SystemParams& params) {
  check_grid(psi, params);
  return FloquetPropagator(psi.grid(), params)(psi);
}

TailMass tail_mass(const WaveFunction& psi, double band) {
  ComplexVector scratch;
  return snapshot(psi.amplitudes(), psi.grid(), CenteredFourier(psi.grid().size()), scratch,
                  band)
      .tails;
}

EnergySeries evolve_record(const WaveFunction& psi0, const SystemParams& params,
                           std::size_t n_kicks, const ConfinementPolicy& policy) {
  return evolve_impl(psi0, params, n_kicks, std::nullopt, policy);
}

EnergySeries evolve_record(const WaveFunction& psi0, const SystemParams& params,
                           std::size_t n_kicks, const ClassicalEnsemble& ensemble,
                           const ConfinementPolicy& policy) {
  return evolve_impl(psi0, params, n_kicks, ensemble, policy);
}

double split_step_bound(const GridSpec& grid) {
  return grid.spacing() * grid.spacing() / kPi;
}

WaveFunction split_step_sho(const WaveFunction& psi, double t, double dt, double omega) {
  const auto& grid = psi.grid();
  const double bound = split_step_bound(grid);
  if (!(dt > 0.0) || !(dt < bound)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "split-step stability requires 0 < dt < spacing^2/pi = " << bound
        << ", got dt = " << dt;
    throw PreconditionError(msg.str());
  }
  if (!(t >= dt) || !std::isfinite(t)) {
    throw PreconditionError("split_step_sho: duration must satisfy t >= dt");
  }
  if (!(omega > 0.0)) throw PreconditionError("split_step_sho: omega must be > 0");

  const double hbar = grid.hbar();
  // The ratio is nudged down so that an exact multiple does not pick up a
  // zero-length trailing step.
  const auto steps = static_cast<std::size_t>(std::ceil(t / dt * (1.0 - 1e-12)));
  const double last = t - static_cast<double>(steps - 1) * dt;

  std::vector<double> x2(grid.size());
  for (std::size_t i = 0; i < x2.size(); ++i) x2[i] = grid.point(i) * grid.point(i);
  auto phases = [&](double duration, double factor) {
    ComplexVector out(x2.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = std::polar(1.0, -omega * duration * x2[i] * factor / hbar);
    }
    return out;
  };

  const CenteredFourier fourier(grid.size());
  WaveFunction out = psi;
  auto amp = out.amplitudes();
  auto kinetic = [&](const ComplexVector& factor) {
    fourier.idft(amp);
    for (std::size_t i = 0; i < amp.size(); ++i) amp[i] *= factor[i];
    fourier.dft(amp);
  };
  auto potential = [&](const ComplexVector& factor) {
    for (std::size_t i = 0; i < amp.size(); ++i) amp[i] *= factor[i];
  };

  // Adjacent half kinetic steps are merged:
  //   K(dt1/2) Q(dt1) K((dt1+dt2)/2) Q(dt2) ... Q(dtn) K(dtn/2).
  const auto half_kinetic = phases(dt, 0.25);
  // Same array serves Q(dt) and K(dt/2)K(dt/2).
  const auto full_step = phases(dt, 0.5);
  kinetic(steps == 1 ? phases(last, 0.25) : half_kinetic);
  for (std::size_t s = 0; s < steps; ++s) {
    const bool is_last = s + 1 == steps;
    potential(is_last ? phases(last, 0.5) : full_step);
    if (is_last) {
      kinetic(phases(last, 0.25));
    } else if (s + 2 == steps) {
      kinetic(phases(0.5 * (dt + last), 0.5));
    } else {
      kinetic(full_step);
    }
  }
  return out;
}

WaveFunction split_step_floquet_step(const WaveFunction& psi, const SystemParams& params,
                                     double dt) {
  return split_step_sho(apply_kick(psi, params), params.t_kick(), dt, params.omega);
}

}  // namespace kho
