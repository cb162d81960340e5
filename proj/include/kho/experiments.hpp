#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kho/config.hpp"
#include "kho/phase_space.hpp"

namespace kho {

/// Outcome of one experiment. Data files and manifest.json have been written
/// to cfg.output_dir when this is returned; `truncated_at` is set when the
/// state left the grid and the outputs are partial.
struct RunReport {
  std::vector<std::filesystem::path> files;
  std::optional<std::size_t> truncated_at;
  std::string message;
};

RunReport run_experiment(const RunConfig& cfg);

RunReport run_energy_experiment(const RunConfig& cfg);
RunReport run_spectral_experiment(const RunConfig& cfg);
RunReport run_husimi_experiment(const RunConfig& cfg);
RunReport run_poincare_experiment(const RunConfig& cfg);
RunReport run_benchmark(const RunConfig& cfg);

/// Shortest decimal string that reads back to the same double.
std::string format_real(double v);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Fraction of lattice cells whose value is at least `level` times the peak.
double husimi_peak_fraction(const HusimiGrid& h, double level = 0.01);

/// Writes `contents` to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace kho
