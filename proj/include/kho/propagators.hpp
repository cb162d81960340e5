#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kho/errors.hpp"
#include "kho/frft.hpp"
#include "kho/phase_space.hpp"
#include "kho/qstate.hpp"

namespace kho {

/// Mean energy per kick. Entry 0 is the initial state; entry n follows the
/// n-th Floquet period. `classical` is empty unless an ensemble was evolved.
struct EnergySeries {
  std::vector<double> quantum;
  std::vector<double> classical;

  std::size_t size() const noexcept { return quantum.size(); }
  bool has_classical() const noexcept { return !classical.empty(); }
  friend bool operator==(const EnergySeries&, const EnergySeries&) = default;
};

/// Raised by evolve_record when the state reaches the edge of the grid.
/// `kick()` is the period after which the breach was detected; `partial()`
/// holds every entry recorded before it.
class TruncatedEvolution : public ConfinementError {
 public:
  TruncatedEvolution(const std::string& what, std::size_t kick, EnergySeries partial)
      : ConfinementError(what, kick), partial_(std::move(partial)) {}

  const EnergySeries& partial() const noexcept { return partial_; }

 private:
  EnergySeries partial_;
};

/// psi(x) -> exp(-i mu cos(k x) / hbar) psi(x).
WaveFunction apply_kick(const WaveFunction& psi, const SystemParams& params);

/// One kick period, kick first: e^{-i theta/2} frft(apply_kick(psi), -theta)
/// with theta = params.theta_rot().
WaveFunction floquet_step(const WaveFunction& psi, const SystemParams& params);

/// Floquet step with the kick phases and transform plan built once.
/// Immutable, so one instance may serve several threads.
class FloquetPropagator {
 public:
  FloquetPropagator(const GridSpec& grid, const SystemParams& params);

  const GridSpec& grid() const noexcept { return grid_; }
  void apply(std::span<Complex> amplitudes) const;
  WaveFunction operator()(const WaveFunction& psi) const;

 private:
  GridSpec grid_;
  ComplexVector kick_;  // includes the zero-point phase e^{-i theta/2}
  FrftPlan rotation_;
};

/// Probability in the outer `band` fraction of the grid (|x| >= (1-band) *
/// extent), in position and in momentum.
struct TailMass {
  double position = 0.0;
  double momentum = 0.0;
};
TailMass tail_mass(const WaveFunction& psi, double band = 0.05);

struct ConfinementPolicy {
  double band = 0.05;
  double threshold = 1e-6;
};

/// Applies n_kicks Floquet steps, recording the mean energy before the first
/// and after every step. Throws TruncatedEvolution when the tail mass in either
/// representation exceeds the policy threshold.
EnergySeries evolve_record(const WaveFunction& psi0, const SystemParams& params,
                           std::size_t n_kicks, const ConfinementPolicy& policy = {});

/// As above, co-evolving a classical ensemble under the kick map; its mean
/// energy lands in `classical`.
EnergySeries evolve_record(const WaveFunction& psi0, const SystemParams& params,
                           std::size_t n_kicks, const ClassicalEnsemble& ensemble,
                           const ConfinementPolicy& policy = {});

/// Largest split-step time step allowed on this grid: spacing^2 / pi.
double split_step_bound(const GridSpec& grid);

/// Free oscillator evolution over `t` by symmetric p-q-p splitting,
///   exp(-i w dt p^2/4h) exp(-i w dt q^2/2h) exp(-i w dt p^2/4h),
/// with ceil(t/dt) sub-steps, the last one shortened to land on t. Throws
/// PreconditionError unless 0 < dt < split_step_bound(grid) and t >= dt.
WaveFunction split_step_sho(const WaveFunction& psi, double t, double dt,
                            double omega = 1.0);

/// Kick, then split_step_sho over one kick period.
WaveFunction split_step_floquet_step(const WaveFunction& psi, const SystemParams& params,
                                     double dt);

}  // namespace kho
