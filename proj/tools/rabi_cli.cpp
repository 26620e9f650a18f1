// rabi: scenario runner, bundle comparison and self-test.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "rabi/errors.hpp"
#include "rabi/scenario.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"Two-level atom with quantized motion: propagators, perturbation series, split-step reference"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  bool deterministic = false;
  auto* sim = app.add_subcommand("simulate", "run a scenario and write its output bundle");
  sim->add_option("--config", config_path, "scenario JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out_dir, "output directory (default: output_dir from the config)");
  sim->add_flag("--deterministic", deterministic, "force the sequential reference path");

  std::string dir_a, dir_b;
  double tol = 1e-6;
  auto* cmp = app.add_subcommand("compare", "compare two output bundles sample by sample");
  cmp->add_option("--a", dir_a, "first bundle")->required()->check(CLI::ExistingDirectory);
  cmp->add_option("--b", dir_b, "second bundle")->required()->check(CLI::ExistingDirectory);
  cmp->add_option("--tol", tol, "max pointwise amplitude difference allowed")->check(CLI::NonNegativeNumber);

  auto* self = app.add_subcommand("selftest", "displacement algebra and special-function properties");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      const rabi::ScenarioConfig cfg = rabi::load_scenario(config_path);
      fs::path out = out_dir.empty() ? fs::path(cfg.output_dir) : fs::path(out_dir);
      if (out.empty()) {
        std::cerr << "error: no output directory (--out or output_dir)\n";
        return 2;
      }
      const auto sum = rabi::run_scenario(cfg, out, deterministic ? rabi::Exec::serial : rabi::Exec::parallel);
      std::cout << "wrote " << sum.files.size() + 1 << " files to " << out.string() << "\n";
      std::cout << "final populations: e = " << sum.population_e.back()
                << ", g = " << sum.population_g.back() << "\n";
      return 0;
    }
    if (*cmp) {
      const auto m = rabi::compare_solutions(dir_a, dir_b);
      std::cout << m.to_json().dump(2) << "\n";
      const bool ok = m.max_abs <= tol;
      std::cerr << (ok ? "within" : "exceeds") << " tolerance " << tol << " (max " << m.max_abs << ")\n";
      return ok ? 0 : 1;
    }
    if (*self) return rabi::run_selftest(std::cout) ? 0 : 1;
  } catch (const rabi::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const rabi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
