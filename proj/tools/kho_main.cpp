// kho: run or validate one experiment configuration.
//
// Exit codes: 0 success, 1 config error, 2 runtime or confinement error,
// 3 resource cap.

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>

#include "kho/config.hpp"
#include "kho/errors.hpp"
#include "kho/experiments.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 1, kRuntime = 2, kResource = 3 };

int run(const std::string& path) {
  kho::RunConfig cfg;
  try {
    cfg = kho::load_config(path);
  } catch (const kho::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  }
  try {
    const auto report = kho::run_experiment(cfg);
    for (const auto& f : report.files) std::cout << (cfg.output_dir / f).string() << "\n";
    if (report.truncated_at) {
      std::cerr << "truncated: " << report.message << "\n";
      return kRuntime;
    }
    return kOk;
  } catch (const kho::ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kResource;
  } catch (const kho::DecompositionError& e) {
    std::cerr << "decomposition failed (" << e.certified() << " certified pairs): " << e.what()
              << "\n";
    return kRuntime;
  } catch (const kho::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource cap: out of memory\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
}

int validate(const std::string& path) {
  try {
    const auto cfg = kho::load_config(path);
    std::cout << "ok: " << kho::to_string(cfg.experiment) << "\n";
    return kOk;
  } catch (const kho::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kicked harmonic oscillator experiment runner"};
  app.set_version_flag("--version", std::string(KHO_CLI_VERSION));
  app.require_subcommand(1);

  std::string run_path, validate_path;
  auto* run_cmd = app.add_subcommand("run", "Run the experiment described by a config file");
  run_cmd->add_option("--config", run_path, "Config file")->required();
  auto* validate_cmd = app.add_subcommand("validate", "Parse and check a config file");
  validate_cmd->add_option("--config", validate_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }
  if (*run_cmd) return run(run_path);
  return validate(validate_path);
}
