#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "kho/phase_space.hpp"
#include "kho/qstate.hpp"

namespace kho {

enum class Experiment { energy, spectrum, husimi, poincare, bench };

std::string_view to_string(Experiment e);

/// One experiment run, parsed from a flat `key = value` file.
///
/// Real-valued keys accept plain decimals and the forms `pi`, `-pi`,
/// `a*pi`, `pi/b`, `a*pi/b`; `ratio` also accepts `golden`.
struct RunConfig {
  Experiment experiment = Experiment::energy;
  SystemParams params;
  int grid_log2n = 0;
  std::size_t n_kicks = 0;
  double initial_q = 0.0;
  double initial_p = 0.0;
  std::size_t ensemble_m = 10000;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir;

  // spectrum
  std::size_t states = 20;
  // husimi lattice (spectrum and husimi experiments)
  std::size_t husimi_resolution = 128;
  double husimi_extent = 12.0;
  // poincare
  std::size_t poincare_orbits = 200;
  double poincare_extent = 10.0;
  double poincare_clip = 30.0;
  // bench
  std::size_t bench_reps = 5;
  int bench_frft_min = 12;
  int bench_frft_max = 17;
  int bench_split_min = 10;
  int bench_split_max = 13;

  /// Normalised key/value pairs as read, for the manifest.
  std::map<std::string, std::string> echo;

  std::size_t grid_size() const { return std::size_t{1} << grid_log2n; }
};

/// Parses and checks a configuration. Throws ConfigError naming the line or
/// key at fault.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Parses a real number in the config syntax. Throws ConfigError.
double parse_real(std::string_view token);

}  // namespace kho
