#include "kho/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "kho/errors.hpp"

namespace kho {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_decimal(std::string_view s, std::string_view whole) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("not a real number: '" + std::string(whole) + "'");
  }
  return v;
}

template <typename Int>
Int parse_integer(std::string_view s, const std::string& key) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("key '" + key + "': not a valid integer: '" + std::string(s) + "'");
  }
  return v;
}

Experiment parse_experiment(std::string_view s) {
  for (auto e : {Experiment::energy, Experiment::spectrum, Experiment::husimi,
                 Experiment::poincare, Experiment::bench}) {
    if (s == to_string(e)) return e;
  }
  throw ConfigError("unknown experiment '" + std::string(s) +
                    "' (expected energy, spectrum, husimi, poincare or bench)");
}

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::energy: return "energy";
    case Experiment::spectrum: return "spectrum";
    case Experiment::husimi: return "husimi";
    case Experiment::poincare: return "poincare";
    case Experiment::bench: return "bench";
  }
  return "?";
}

double parse_real(std::string_view token) {
  const auto whole = trim(token);
  std::string_view s = whole;
  const auto at = s.find("pi");
  if (at == std::string_view::npos) return parse_decimal(s, whole);

  double sign = 1.0;
  std::string_view head = s.substr(0, at);
  std::string_view tail = s.substr(at + 2);
  if (!head.empty() && (head.front() == '-' || head.front() == '+')) {
    sign = head.front() == '-' ? -1.0 : 1.0;
    head.remove_prefix(1);
  }
  double factor = 1.0;
  if (!head.empty()) {
    if (head.back() != '*') throw ConfigError("not a real number: '" + std::string(whole) + "'");
    head.remove_suffix(1);
    factor = parse_decimal(head, whole);
  }
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') throw ConfigError("not a real number: '" + std::string(whole) + "'");
    tail.remove_prefix(1);
    divisor = parse_decimal(tail, whole);
    if (divisor == 0.0) throw ConfigError("division by zero in '" + std::string(whole) + "'");
  }
  return sign * factor * kPi / divisor;
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key{trim(view.substr(0, eq))};
    const std::string value{trim(view.substr(eq + 1))};
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    }
    if (!kv.emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }

  RunConfig cfg;
  cfg.echo = kv;
  std::set<std::string> seen;
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    seen.insert(key);
    return it->second;
  };
  auto require = [&](const std::string& key) -> std::string {
    auto v = take(key);
    if (!v) {
      throw ConfigError("missing key '" + key + "' for experiment '" +
                        std::string(to_string(cfg.experiment)) + "'");
    }
    return *v;
  };
  auto count = [&](const std::string& key, std::size_t lo, const std::string& v) {
    const auto n = parse_integer<std::size_t>(v, key);
    if (n < lo) throw ConfigError("key '" + key + "' must be >= " + std::to_string(lo));
    return n;
  };
  auto positive = [&](const std::string& key, const std::string& v) {
    const double x = parse_real(v);
    if (!(x > 0.0)) throw ConfigError("key '" + key + "' must be positive");
    return x;
  };

  cfg.experiment = parse_experiment(require("experiment"));
  const Experiment ex = cfg.experiment;
  const bool bench = ex == Experiment::bench;

  cfg.output_dir = require("output_dir");

  // Frequency ratio: `ratio` (real or `golden`) or integer `resonance_r`.
  const auto ratio = take("ratio");
  const auto resonance = take("resonance_r");
  if (ratio && resonance) throw ConfigError("give either 'ratio' or 'resonance_r', not both");
  if (resonance) {
    const int r = parse_integer<int>(*resonance, "resonance_r");
    if (r < 1) throw ConfigError("key 'resonance_r' must be >= 1");
    cfg.params.ratio = 1.0 / r;
  } else if (ratio) {
    cfg.params.ratio = *ratio == "golden" ? kGoldenRatio : parse_real(*ratio);
  } else if (!bench) {
    throw ConfigError("missing key 'ratio' or 'resonance_r' for experiment '" +
                      std::string(to_string(ex)) + "'");
  }
  if (!ratio && !resonance) cfg.params.ratio = kGoldenRatio;  // bench default
  if (const auto v = bench ? take("mu") : std::optional{require("mu")}) {
    cfg.params.mu = parse_real(*v);
  } else {
    cfg.params.mu = 1.0;
  }
  if (const auto v = take("k")) cfg.params.k = positive("k", *v);
  if (const auto v = take("hbar")) cfg.params.hbar = positive("hbar", *v);
  if (const auto v = take("omega")) cfg.params.omega = positive("omega", *v);
  try {
    cfg.params.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  if (const auto v = take("seed")) cfg.seed = parse_integer<std::uint64_t>(*v, "seed");

  const bool needs_grid = ex == Experiment::energy || ex == Experiment::spectrum ||
                          ex == Experiment::husimi;
  if (needs_grid) {
    cfg.grid_log2n = parse_integer<int>(require("grid_log2n"), "grid_log2n");
    if (cfg.grid_log2n < 6 || cfg.grid_log2n > 18) {
      throw ConfigError("key 'grid_log2n' must lie in [6, 18]");
    }
  }
  if (ex == Experiment::energy || ex == Experiment::husimi || ex == Experiment::poincare) {
    cfg.n_kicks = count("n_kicks", 0, require("n_kicks"));
  }
  if (ex == Experiment::energy || ex == Experiment::husimi) {
    cfg.initial_q = parse_real(require("initial_q"));
    cfg.initial_p = parse_real(require("initial_p"));
  }
  if (ex == Experiment::energy) {
    if (const auto v = take("ensemble_m")) cfg.ensemble_m = count("ensemble_m", 1, *v);
  }
  if (ex == Experiment::spectrum) {
    if (const auto v = take("states")) cfg.states = count("states", 0, *v);
    if (cfg.states > cfg.grid_size()) throw ConfigError("key 'states' exceeds the grid size");
  }
  if (ex == Experiment::spectrum || ex == Experiment::husimi) {
    if (const auto v = take("husimi_resolution")) {
      cfg.husimi_resolution = count("husimi_resolution", 2, *v);
    }
    if (const auto v = take("husimi_extent")) {
      cfg.husimi_extent = positive("husimi_extent", *v);
    }
  }
  if (ex == Experiment::poincare) {
    if (const auto v = take("poincare_orbits")) cfg.poincare_orbits = count("poincare_orbits", 1, *v);
    if (const auto v = take("poincare_extent")) cfg.poincare_extent = positive("poincare_extent", *v);
    if (const auto v = take("poincare_clip")) cfg.poincare_clip = positive("poincare_clip", *v);
  }
  if (bench) {
    if (const auto v = take("bench_reps")) cfg.bench_reps = count("bench_reps", 5, *v);
    auto range = [&](const char* lo_key, const char* hi_key, int& lo, int& hi) {
      if (const auto v = take(lo_key)) lo = parse_integer<int>(*v, lo_key);
      if (const auto v = take(hi_key)) hi = parse_integer<int>(*v, hi_key);
      if (lo < 6 || hi > 18 || lo > hi) {
        throw ConfigError(std::string("keys '") + lo_key + "'/'" + hi_key +
                          "' must satisfy 6 <= min <= max <= 18");
      }
    };
    range("bench_frft_min", "bench_frft_max", cfg.bench_frft_min, cfg.bench_frft_max);
    range("bench_split_min", "bench_split_max", cfg.bench_split_min, cfg.bench_split_max);
  }

  // Six widths around the coherent centre, and around every Husimi lattice
  // point, must fit inside the grid.
  if (needs_grid) {
    const double extent = GridSpec(cfg.grid_size(), cfg.params.hbar).extent();
    const double margin = 6.0 * std::sqrt(cfg.params.hbar);
    auto fits = [&](double v) { return std::abs(v) + margin < extent; };
    if (ex != Experiment::spectrum && (!fits(cfg.initial_q) || !fits(cfg.initial_p))) {
      throw ConfigError("initial state does not fit on a 2^" + std::to_string(cfg.grid_log2n) +
                        " grid");
    }
    if (ex != Experiment::energy && !fits(cfg.husimi_extent)) {
      throw ConfigError("key 'husimi_extent' does not fit on a 2^" +
                        std::to_string(cfg.grid_log2n) + " grid");
    }
  }

  for (const auto& [key, value] : kv) {
    if (!seen.contains(key)) {
      throw ConfigError("key '" + key + "' is not used by experiment '" +
                        std::string(to_string(ex)) + "'");
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace kho
