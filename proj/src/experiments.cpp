#include "kho/experiments.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <random>
#include <system_error>

#include <json.hpp>

#include "kho/errors.hpp"
#include "kho/propagators.hpp"
#include "kho/spectral.hpp"

#ifndef KHO_VERSION
#define KHO_VERSION "0.0.0"
#endif

namespace kho {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

class CsvWriter {
 public:
  explicit CsvWriter(std::string_view header) {
    out_.append(header);
    out_.push_back('\n');
  }

  CsvWriter& real(double v) {
    sep();
    out_ += format_real(v);
    return *this;
  }
  CsvWriter& integer(long long v) {
    sep();
    out_ += std::to_string(v);
    return *this;
  }
  CsvWriter& text(std::string_view s) {
    sep();
    out_.append(s);
    return *this;
  }
  void end_row() {
    out_.push_back('\n');
    fresh_ = true;
  }
  const std::string& str() const { return out_; }

 private:
  void sep() {
    if (!fresh_) out_.push_back(',');
    fresh_ = false;
  }
  std::string out_;
  bool fresh_ = true;
};

// Data files are written under the run directory; paths in the report and
// manifest are relative to it.
struct RunContext {
  const RunConfig& cfg;
  Clock::time_point start = Clock::now();
  RunReport report;
  json extra = json::object();

  explicit RunContext(const RunConfig& c) : cfg(c) { fs::create_directories(cfg.output_dir); }

  void emit(const fs::path& relative, const std::string& contents) {
    const auto full = cfg.output_dir / relative;
    if (relative.has_parent_path()) fs::create_directories(full.parent_path());
    write_file_atomic(full, contents);
    report.files.push_back(relative);
  }

  RunReport finish(std::optional<double> spacing) {
    json m;
    m["experiment"] = std::string(to_string(cfg.experiment));
    m["config"] = cfg.echo;
    m["code_version"] = KHO_VERSION;
    m["wall_time_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
    m["grid_spacing"] = spacing ? json(*spacing) : json(nullptr);
    json conf;
    if (report.truncated_at) {
      conf["status"] = "truncated";
      conf["kick"] = *report.truncated_at;
      conf["message"] = report.message;
    } else {
      conf["status"] = spacing ? "confined" : "not_applicable";
    }
    m["confinement"] = conf;
    json sums = json::object();
    for (const auto& f : report.files) sums[f.generic_string()] = sha256_file(cfg.output_dir / f);
    m["checksums"] = sums;
    if (!extra.empty()) m["results"] = extra;
    write_file_atomic(cfg.output_dir / "manifest.json", m.dump(2) + "\n");
    report.files.push_back("manifest.json");
    return std::move(report);
  }
};

std::string indexed(std::string_view stem, std::size_t i) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%03zu", i);
  return std::string(stem) + "_" + buf.data() + ".csv";
}

std::string husimi_csv(const HusimiGrid& h) {
  CsvWriter csv("q,p,value");
  for (std::size_t i = 0; i < h.q_axis.size(); ++i) {
    for (std::size_t j = 0; j < h.p_axis.size(); ++j) {
      csv.real(h.q_axis[i]).real(h.p_axis[j]).real(h.at(i, j)).end_row();
    }
  }
  return csv.str();
}

std::string density_csv(const WaveFunction& psi) {
  CsvWriter csv("q,density");
  const auto amp = psi.amplitudes();
  for (std::size_t i = 0; i < amp.size(); ++i) {
    csv.real(psi.grid().point(i)).real(std::norm(amp[i])).end_row();
  }
  return csv.str();
}

std::vector<double> husimi_axis(const RunConfig& cfg) {
  return linear_axis(-cfg.husimi_extent, cfg.husimi_extent, cfg.husimi_resolution);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Median over `reps` repetitions of the mean time of one call, each
// repetition running enough calls to last about 20 ms.
// One benchmarked call, repeated often enough that each sample spans at least 20 ms.
struct TimedCase {
  std::string method;
  int log2n;
  std::function<void()> call;
  std::size_t inner = 1;
  std::vector<double> samples;
};

// Repetitions run round-robin over the cases, so a slow spell on a shared machine
// lands on every size instead of inflating one of them.
void time_cases(std::vector<TimedCase>& cases, std::size_t reps) {
  for (auto& c : cases) {
    const auto t0 = Clock::now();
    c.call();
    const double single = std::chrono::duration<double>(Clock::now() - t0).count();
    c.inner = static_cast<std::size_t>(std::max(1.0, std::ceil(0.02 / std::max(single, 1e-9))));
  }
  for (std::size_t r = 0; r < reps; ++r) {
    for (auto& c : cases) {
      const auto t0 = Clock::now();
      for (std::size_t i = 0; i < c.inner; ++i) c.call();
      c.samples.push_back(std::chrono::duration<double>(Clock::now() - t0).count() /
                          static_cast<double>(c.inner));
    }
  }
}

}  // namespace

std::string format_real(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("format_real: conversion failed");
  return std::string(buf.data(), ptr);
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "' for checksum");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest initialisation failed");
  }
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

double husimi_peak_fraction(const HusimiGrid& h, double level) {
  if (h.values.empty()) return 0.0;
  const double peak = *std::max_element(h.values.begin(), h.values.end());
  const auto hits = std::count_if(h.values.begin(), h.values.end(),
                                  [&](double v) { return v >= level * peak; });
  return static_cast<double>(hits) / static_cast<double>(h.values.size());
}

void write_file_atomic(const fs::path& path, std::string_view contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

RunReport run_energy_experiment(const RunConfig& cfg) {
  if (cfg.experiment != Experiment::energy) throw ConfigError("not an energy config");
  RunContext ctx(cfg);
  const GridSpec grid(cfg.grid_size(), cfg.params.hbar);
  const auto psi = coherent_state(grid, cfg.initial_q, cfg.initial_p);
  const auto ensemble = sample_ensemble({cfg.initial_q, cfg.initial_p}, cfg.ensemble_m,
                                        cfg.params.hbar, cfg.seed);
  EnergySeries series;
  try {
    series = evolve_record(psi, cfg.params, cfg.n_kicks, ensemble);
  } catch (const TruncatedEvolution& e) {
    series = e.partial();
    ctx.report.truncated_at = e.kick();
    ctx.report.message = e.what();
  }
  CsvWriter csv("kick,quantum_energy,classical_energy");
  for (std::size_t i = 0; i < series.size(); ++i) {
    csv.integer(static_cast<long long>(i)).real(series.quantum[i]).real(series.classical[i]).end_row();
  }
  ctx.emit("energy.csv", csv.str());
  ctx.extra["rows"] = series.size();
  return ctx.finish(grid.spacing());
}

RunReport run_spectral_experiment(const RunConfig& cfg) {
  if (cfg.experiment != Experiment::spectrum) throw ConfigError("not a spectrum config");
  RunContext ctx(cfg);
  const GridSpec grid(cfg.grid_size(), cfg.params.hbar);
  const auto sys = eigendecompose(build_floquet_matrix(cfg.params, grid), grid);
  const auto metrics = eigenstate_metrics(sys);

  CsvWriter csv("index,quasi_energy,mean_energy,ipr");
  for (std::size_t j = 0; j < sys.size(); ++j) {
    csv.integer(static_cast<long long>(j))
        .real(sys.quasi_energies[j])
        .real(metrics[j].mean_energy)
        .real(metrics[j].ipr)
        .end_row();
  }
  ctx.emit("spectrum.csv", csv.str());

  const auto axis = husimi_axis(cfg);
  json fractions = json::array();
  double ipr_sum = 0.0;
  for (std::size_t j = 0; j < cfg.states; ++j) {
    const auto state = sys.state(j);
    ctx.emit(fs::path("states") / indexed("state", j), density_csv(state));
    const auto h = husimi(state, axis, axis);
    ctx.emit(fs::path("states") / indexed("husimi", j), husimi_csv(h));
    fractions.push_back(husimi_peak_fraction(h));
    ipr_sum += metrics[j].ipr;
  }
  ctx.extra["certified_pairs"] = sys.size();
  ctx.extra["max_residual"] = *std::max_element(sys.residuals.begin(), sys.residuals.end());
  if (cfg.states > 0) ctx.extra["mean_ipr_lowest"] = ipr_sum / static_cast<double>(cfg.states);
  ctx.extra["husimi_peak_fraction"] = fractions;
  return ctx.finish(grid.spacing());
}

RunReport run_husimi_experiment(const RunConfig& cfg) {
  if (cfg.experiment != Experiment::husimi) throw ConfigError("not a husimi config");
  RunContext ctx(cfg);
  const GridSpec grid(cfg.grid_size(), cfg.params.hbar);
  auto psi = coherent_state(grid, cfg.initial_q, cfg.initial_p);
  const FloquetPropagator step(grid, cfg.params);
  const ConfinementPolicy policy;
  auto work = psi;
  for (std::size_t kick = 1; kick <= cfg.n_kicks; ++kick) {
    step.apply(work.amplitudes());
    const auto tails = tail_mass(work, policy.band);
    if (tails.position > policy.threshold || tails.momentum > policy.threshold) {
      ctx.report.truncated_at = kick;
      ctx.report.message = "state left the grid at kick " + std::to_string(kick);
      break;
    }
    psi = work;
  }
  const auto axis = husimi_axis(cfg);
  const auto h = husimi(psi, axis, axis);
  ctx.emit("density.csv", density_csv(psi));
  ctx.emit("husimi.csv", husimi_csv(h));
  ctx.extra["husimi_total"] = h.total();
  ctx.extra["husimi_peak_fraction"] = husimi_peak_fraction(h);
  return ctx.finish(grid.spacing());
}

RunReport run_poincare_experiment(const RunConfig& cfg) {
  if (cfg.experiment != Experiment::poincare) throw ConfigError("not a poincare config");
  RunContext ctx(cfg);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(-cfg.poincare_extent, cfg.poincare_extent);
  std::vector<PhasePoint> initials(cfg.poincare_orbits);
  for (auto& pt : initials) {
    pt.q = u(rng);
    pt.p = u(rng);
  }
  const auto cloud = poincare_section(initials, cfg.params, cfg.n_kicks, cfg.poincare_clip);
  CsvWriter csv("q,p");
  for (const auto& pt : cloud.points) csv.real(pt.q).real(pt.p).end_row();
  ctx.emit("poincare.csv", csv.str());
  ctx.extra["points"] = cloud.points.size();
  ctx.extra["clipped"] = cloud.clipped;
  return ctx.finish(std::nullopt);
}

RunReport run_benchmark(const RunConfig& cfg) {
  if (cfg.experiment != Experiment::bench) throw ConfigError("not a bench config");
  RunContext ctx(cfg);
  std::vector<TimedCase> cases;
  for (int log2n = cfg.bench_frft_min; log2n <= cfg.bench_frft_max; ++log2n) {
    const GridSpec grid(std::size_t{1} << log2n, cfg.params.hbar);
    auto step = std::make_shared<FloquetPropagator>(grid, cfg.params);
    auto psi = std::make_shared<WaveFunction>(coherent_state(grid, 1.0, 0.0));
    cases.push_back({"frft", log2n, [step, psi] { step->apply(psi->amplitudes()); }, 1, {}});
  }
  for (int log2n = cfg.bench_split_min; log2n <= cfg.bench_split_max; ++log2n) {
    const GridSpec grid(std::size_t{1} << log2n, cfg.params.hbar);
    auto psi = std::make_shared<const WaveFunction>(coherent_state(grid, 1.0, 0.0));
    const double dt = 0.9 * split_step_bound(grid);
    cases.push_back({"split_step", log2n, [psi, dt, params = cfg.params] {
                       (void)split_step_floquet_step(*psi, params, dt);
                     }, 1, {}});
  }
  time_cases(cases, cfg.bench_reps);
  CsvWriter csv("method,log2n,seconds_per_period");
  for (const auto& c : cases) csv.text(c.method).integer(c.log2n).real(median(c.samples)).end_row();
  ctx.emit("bench.csv", csv.str());
  ctx.extra["repetitions"] = cfg.bench_reps;
  ctx.extra["split_step_dt_fraction_of_bound"] = 0.9;
  return ctx.finish(std::nullopt);
}

RunReport run_experiment(const RunConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::energy: return run_energy_experiment(cfg);
    case Experiment::spectrum: return run_spectral_experiment(cfg);
    case Experiment::husimi: return run_husimi_experiment(cfg);
    case Experiment::poincare: return run_poincare_experiment(cfg);
    case Experiment::bench: return run_benchmark(cfg);
  }
  throw ConfigError("unknown experiment");
}

}  // namespace kho
