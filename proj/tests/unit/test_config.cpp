#include <doctest.h>

#include <cmath>
#include <string>

#include "kho/config.hpp"
#include "kho/errors.hpp"

using namespace kho;

namespace {

const char* kEnergy = R"(# comment line
experiment = energy
resonance_r = 4     # trailing comment
mu = 0.5
grid_log2n = 10
n_kicks = 20
initial_q = -pi/2
initial_p = 2*pi
output_dir = out/x
)";

std::string with(std::string text, const std::string& line) { return text + line + "\n"; }

}  // namespace

TEST_CASE("real number syntax") {
  CHECK(parse_real("1.5") == 1.5);
  CHECK(parse_real(" -2e-3 ") == -2e-3);
  CHECK(parse_real("+7") == 7.0);
  CHECK(parse_real("pi") == kPi);
  CHECK(parse_real("-pi") == -kPi);
  CHECK(parse_real("pi/2") == kPi / 2);
  CHECK(parse_real("3*pi/4") == 3 * kPi / 4);
  CHECK(parse_real("-0.5*pi") == -0.5 * kPi);
  for (const char* bad : {"", "abc", "1.5x", "2pi", "pi*2", "pi/0", "nan", "inf", "1,5"}) {
    CHECK_THROWS_AS(parse_real(bad), ConfigError);
  }
}

TEST_CASE("energy config") {
  const auto cfg = parse_config(kEnergy);
  CHECK(cfg.experiment == Experiment::energy);
  CHECK(cfg.params.ratio == 0.25);
  CHECK(cfg.params.mu == 0.5);
  CHECK(cfg.params.k == 1.0);
  CHECK(cfg.params.hbar == 1.0);
  CHECK(cfg.grid_log2n == 10);
  CHECK(cfg.grid_size() == 1024);
  CHECK(cfg.n_kicks == 20);
  CHECK(cfg.initial_q == -kPi / 2);
  CHECK(cfg.initial_p == 2 * kPi);
  CHECK(cfg.ensemble_m == 10000);
  CHECK(cfg.seed == 1);
  CHECK(cfg.output_dir == "out/x");
  CHECK(cfg.echo.at("resonance_r") == "4");
  CHECK(cfg.echo.size() == 8);
}

TEST_CASE("ratio forms") {
  std::string base = R"(experiment = spectrum
mu = 1
grid_log2n = 8
output_dir = o
)";
  CHECK(parse_config(with(base, "ratio = golden")).params.ratio == kGoldenRatio);
  CHECK(parse_config(with(base, "ratio = 0.2")).params.ratio == 0.2);
  CHECK(parse_config(with(base, "resonance_r = 5")).params.ratio == 0.2);
  CHECK_THROWS_AS(parse_config(base), ConfigError);
  CHECK_THROWS_AS(parse_config(with(with(base, "ratio = 0.2"), "resonance_r = 5")), ConfigError);
  CHECK_THROWS_AS(parse_config(with(base, "resonance_r = 0")), ConfigError);
  CHECK_THROWS_AS(parse_config(with(base, "resonance_r = 2.5")), ConfigError);
}

TEST_CASE("config errors") {
  const std::string e = kEnergy;
  SUBCASE("unknown key") { CHECK_THROWS_AS(parse_config(with(e, "colour = blue")), ConfigError); }
  SUBCASE("key not used by this experiment") {
    CHECK_THROWS_AS(parse_config(with(e, "states = 3")), ConfigError);
  }
  SUBCASE("duplicate key") { CHECK_THROWS_AS(parse_config(with(e, "mu = 1")), ConfigError); }
  SUBCASE("malformed line") { CHECK_THROWS_AS(parse_config(with(e, "just words")), ConfigError); }
  SUBCASE("empty value") { CHECK_THROWS_AS(parse_config(with(e, "seed =")), ConfigError); }
  SUBCASE("missing required key") {
    CHECK_THROWS_AS(parse_config("experiment = energy\noutput_dir = o\nresonance_r = 4\n"),
                    ConfigError);
  }
  SUBCASE("unknown experiment") {
    CHECK_THROWS_AS(parse_config("experiment = movie\noutput_dir = o\n"), ConfigError);
  }
  SUBCASE("grid range") {
    std::string t = kEnergy;
    const auto at = t.find("grid_log2n = 10");
    for (const char* bad : {"grid_log2n = 5", "grid_log2n = 19", "grid_log2n = -1"}) {
      std::string copy = t;
      copy.replace(at, 15, bad);
      CHECK_THROWS_AS(parse_config(copy), ConfigError);
    }
    std::string ok = t;
    ok.replace(at, 15, "grid_log2n = 18");
    CHECK(parse_config(ok).grid_log2n == 18);
  }
  SUBCASE("negative kick strength") {
    std::string t = kEnergy;
    t.replace(t.find("mu = 0.5"), 8, "mu = -1");
    CHECK_THROWS_AS(parse_config(t), ConfigError);
  }
  SUBCASE("initial state must fit the grid") {
    std::string t = kEnergy;
    t.replace(t.find("initial_q = -pi/2"), 17, "initial_q = 40");
    CHECK_THROWS_AS(parse_config(t), ConfigError);
  }
  SUBCASE("unreadable file") {
    CHECK_THROWS_AS(load_config("/nonexistent/dir/x.cfg"), ConfigError);
  }
}

TEST_CASE("bench defaults and limits") {
  const auto cfg = parse_config("experiment = bench\noutput_dir = b\n");
  CHECK(cfg.params.ratio == kGoldenRatio);
  CHECK(cfg.bench_reps == 5);
  CHECK(cfg.bench_frft_min == 12);
  CHECK(cfg.bench_frft_max == 17);
  CHECK(cfg.bench_split_min == 10);
  CHECK(cfg.bench_split_max == 13);
  CHECK_THROWS_AS(parse_config("experiment = bench\noutput_dir = b\nbench_reps = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = bench\noutput_dir = b\nbench_frft_min = 14\n"
                               "bench_frft_max = 13\n"),
                  ConfigError);
}

TEST_CASE("the repository configs parse") {
  for (const char* name :
       {"ehrenfest_r4_mu0", "spectrum_r4_mu0_n256", "energy_r4_mu0.5_origin", "energy_r5_mu1_q7.5",
        "energy_r5_mu6_q7.5", "energy_golden_mu1_qpi", "energy_golden_mu6_qpi", "eigenstates_golden_mu1",
        "eigenstates_golden_mu6", "bench", "poincare_r4_mu2", "husimi_r4_mu2_origin"}) {
    CAPTURE(name);
    CHECK_NOTHROW(load_config(std::string(KHO_CONFIG_DIR) + "/" + name + ".cfg"));
  }
}
