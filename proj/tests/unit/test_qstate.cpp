#include <doctest.h>

#include <cmath>
#include <random>

#include "kho/errors.hpp"
#include "kho/qstate.hpp"
#include "test_support.hpp"

using namespace kho;

namespace {

// <q^2> and <p^2> of the coherent state by trapezoid quadrature of the
// closed-form wavefunction and its derivative on a fine, wide mesh.
struct Moments {
  double q2, p2;
};
Moments quadrature_moments(double q0, double p0) {
  const double a = -40.0, b = 40.0;
  const int steps = 400000;
  const double h = (b - a) / steps;
  double mass = 0.0, q2 = 0.0, p2 = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double q = a + i * h;
    const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
    const double g = std::exp(-0.5 * (q - q0) * (q - q0));
    // psi = g e^{i p0 q}; psi' = (-(q - q0) + i p0) psi
    const double dens = g * g;
    mass += w * dens;
    q2 += w * q * q * dens;
    p2 += w * ((q - q0) * (q - q0) + p0 * p0) * dens;
  }
  return {q2 / mass, p2 / mass};
}

// <p^2> from an eighth-order central difference of psi on the grid.
double finite_difference_p2(const WaveFunction& psi) {
  static constexpr double c[] = {4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
  const auto amp = psi.amplitudes();
  const double h = psi.grid().spacing();
  double mass = 0.0, p2 = 0.0;
  for (std::size_t i = 4; i + 4 < amp.size(); ++i) {
    Complex d = 0.0;
    for (std::size_t m = 1; m <= 4; ++m) d += c[m - 1] * (amp[i + m] - amp[i - m]);
    d /= h;
    p2 += std::norm(d);
  }
  for (const auto& z : amp) mass += std::norm(z);
  return p2 / mass;
}

}  // namespace

TEST_CASE("GridSpec") {
  const GridSpec g(1024);
  CHECK(g.spacing() * g.spacing() * 1024 == doctest::Approx(kTwoPi).epsilon(1e-15));
  CHECK(g.point(512) == 0.0);
  CHECK(g.point(0) == doctest::Approx(-g.extent()));
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g.point(i) > g.point(i - 1));
  const GridSpec h(256, 0.5);
  CHECK(h.spacing() * h.spacing() * 256 == doctest::Approx(kTwoPi * 0.5));
  CHECK_THROWS_AS(GridSpec(1000), DomainError);
  CHECK_THROWS_AS(GridSpec(2), DomainError);
  CHECK_THROWS_AS(GridSpec(64, 0.0), DomainError);
}

TEST_CASE("SystemParams derived quantities") {
  const auto r4 = SystemParams::resonance(4, 0.5);
  CHECK(r4.theta_rot() == doctest::Approx(kPi / 2));
  CHECK(r4.t_kick() == doctest::Approx(kPi / 2));
  SystemParams golden;
  golden.ratio = kGoldenRatio;
  CHECK(golden.theta_rot() >= 0.0);
  CHECK(golden.theta_rot() < kTwoPi);
  CHECK(golden.theta_rot() == doctest::Approx(kTwoPi * (kGoldenRatio - 1.0)));
  SystemParams bad;
  bad.mu = -1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("coherent ground state") {
  const GridSpec grid(1024);
  const auto psi = coherent_state(grid, 0.0, 0.0);
  const auto obs = observables(psi);
  CHECK(obs.norm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(obs.mean_q) <= 1e-9);
  CHECK(std::abs(obs.mean_p) <= 1e-9);
  CHECK(std::abs(obs.energy - 0.5) <= 1e-10);
}

TEST_CASE("coherent state at (0, pi) has energy pi^2/2 + 1/2") {
  const auto oracle = quadrature_moments(0.0, kPi);
  const double expected = 0.5 * (oracle.q2 + oracle.p2);
  CHECK(std::abs(expected - (kPi * kPi / 2 + 0.5)) <= 1e-9);
  const auto obs = observables(coherent_state(GridSpec(1024), 0.0, kPi));
  CHECK(std::abs(obs.energy - expected) <= 1e-8);
  CHECK(obs.energy == doctest::Approx(5.43480).epsilon(1e-5));
}

TEST_CASE("coherent state at (3, 4)") {
  const auto oracle = quadrature_moments(3.0, 4.0);
  const auto obs = observables(coherent_state(GridSpec(1024), 3.0, 4.0));
  CHECK(std::abs(obs.mean_q - 3.0) <= 1e-9);
  CHECK(std::abs(obs.mean_p - 4.0) <= 1e-9);
  CHECK(std::abs(obs.energy - 13.0) <= 1e-7);
  CHECK(std::abs(obs.energy - 0.5 * (oracle.q2 + oracle.p2)) <= 1e-7);
}

TEST_CASE("coherent state normalisation and centre for random input") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double q0 = u(rng), p0 = u(rng), omega0 = w(rng);
    const auto psi = coherent_state(GridSpec(1024, 1.0), q0, p0, omega0);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const auto obs = observables(psi);
    CHECK(std::abs(obs.mean_q - q0) <= 1e-9);
    CHECK(std::abs(obs.mean_p - p0) <= 1e-9);
  }
}

TEST_CASE("squeezed Gaussian trades position for momentum spread") {
  const GridSpec grid(2048);
  const auto ground = observables(coherent_state(grid, 0.0, 0.0));
  const auto narrow = observables(coherent_state(grid, 0.0, 0.0, 9.0));
  CHECK(narrow.mean_q2 < ground.mean_q2);
  CHECK(narrow.mean_p2 > ground.mean_p2);
  CHECK(narrow.mean_q2 * narrow.mean_p2 >= 0.25 - 1e-12);
}

TEST_CASE("confinement is enforced") {
  const GridSpec grid(256);  // extent ~ 20
  CHECK_THROWS_AS(coherent_state(grid, 16.0, 0.0), DomainError);
  CHECK_THROWS_AS(coherent_state(grid, 0.0, -16.0), DomainError);
  CHECK_THROWS_AS(coherent_state(grid, 0.0, 0.0, 0.0), DomainError);
  CHECK_NOTHROW(coherent_state(grid, 12.0, 0.0));
}

TEST_CASE("observables errors and wavefunction checks") {
  const GridSpec grid(64);
  CHECK_THROWS_AS(observables(WaveFunction(grid, ComplexVector(64, 0.0))), DomainError);
  CHECK_THROWS_AS(WaveFunction(grid, ComplexVector(32, 1.0)), DomainError);
  WaveFunction zero(grid, ComplexVector(64, 0.0));
  CHECK_THROWS_AS(zero.normalize(), DomainError);
}

TEST_CASE("property: momentum-grid energy matches finite-difference kinetic energy") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  const GridSpec grid(16384);  // fine mesh keeps the stencil error below 1e-10
  for (int trial = 0; trial < 8; ++trial) {
    const auto psi = coherent_state(grid, u(rng), u(rng));
    const auto obs = observables(psi);
    const double fd_energy = 0.5 * (finite_difference_p2(psi) + obs.mean_q2);
    CHECK(std::abs(obs.energy - fd_energy) <= 1e-8);
  }
}

TEST_CASE("property: translation covariance and phase invariance") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  const GridSpec grid(1024);
  for (int trial = 0; trial < 10; ++trial) {
    const double q0 = u(rng), p0 = u(rng), a = u(rng);
    const auto base = observables(coherent_state(grid, q0, p0));
    const auto shifted = observables(coherent_state(grid, q0 + a, p0));
    CHECK(std::abs(shifted.mean_q - base.mean_q - a) <= 1e-9);

    auto psi = coherent_state(grid, q0, p0);
    for (auto& z : psi.amplitudes()) z *= std::polar(1.0, 0.37 * (trial + 1));
    const auto rotated = observables(psi);
    CHECK(std::abs(rotated.norm - base.norm) <= 1e-12);
    CHECK(std::abs(rotated.mean_q - base.mean_q) <= 1e-12);
    CHECK(std::abs(rotated.mean_p - base.mean_p) <= 1e-12);
    CHECK(std::abs(rotated.energy - base.energy) <= 1e-12);
  }
}
