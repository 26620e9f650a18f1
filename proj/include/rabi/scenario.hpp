#pragma once

// Scenario runner behind the command-line tool: JSON config -> solver run ->
// CSV/JSON output bundle, plus bundle comparison and the self-test.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rabi/core.hpp"
#include "rabi/potential.hpp"

namespace rabi {

enum class SolverKind { free, linear, perturbative, oracle };
const char* to_string(SolverKind s);

struct ScenarioConfig {
  SimulationParams params;
  std::size_t grid_n = 1024;
  double nu_min = -8.0;
  double nu_max = 8.0;

  double center = 0.0;
  double sigma = 0.1;
  Level level = Level::ground;

  PotentialKind potential = PotentialKind::none;
  std::vector<double> potential_values;  // tabulated only

  SolverKind solver = SolverKind::free;
  int order = 10;                 // perturbative N
  int richardson_levels = 1;      // perturbative step-halving levels
  double oracle_d_tau = 0.0;      // 0: default_oracle_step

  double phi0 = 0.0;
  bool chirp = false;             // add kappa tau^2 (linear potential)
  double noise_s = 0.0;
  std::uint64_t noise_seed = 0;
  double noise_d_tau = 1e-2;

  double tau_end = 2.0 * kPi;
  std::size_t tau_samples = 65;   // uniform on [0, tau_end]

  Frame frame = Frame::interaction;
  std::string output_dir;         // optional; --out overrides

  MomentumGrid grid() const { return MomentumGrid(grid_n, nu_min, nu_max); }
  std::vector<double> tau_grid() const;
  PotentialSpec potential_spec() const;
};

// Parses and validates; ConfigError lists every problem found, including
// unknown keys at any level.
ScenarioConfig parse_scenario(const nlohmann::json& j);
ScenarioConfig load_scenario(const std::filesystem::path& path);

// The fully resolved config (defaults filled in) in the input schema.
nlohmann::json to_json(const ScenarioConfig& cfg);

struct RunSummary {
  std::vector<double> tau;
  std::vector<double> population_e;
  std::vector<double> population_g;
  std::vector<std::string> files;
};

// Runs the configured solver and writes the bundle into out_dir:
//   manifest.json, populations.csv, states/state_NNNN.csv,
//   elements/elements_NNNN.csv (free and linear), noise.csv (if noisy).
RunSummary run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir,
                        Exec exec = Exec::parallel);

struct SampleMetrics {
  double tau = 0.0;
  double max_abs = 0.0;
  double l2 = 0.0;
  double population_e_diff = 0.0;
};

struct CompareMetrics {
  std::vector<SampleMetrics> samples;
  double max_abs = 0.0;
  double max_l2 = 0.0;
  nlohmann::json to_json() const;
};

// Both bundles must share the grid and the tau samples (IncomparableError
// otherwise).
CompareMetrics compare_solutions(const std::filesystem::path& a, const std::filesystem::path& b);

// Displacement-algebra sweep, resonant pairs and the special-function
// property suite. One PASS/FAIL line per check; true if all pass.
bool run_selftest(std::ostream& os, std::uint64_t seed = 20240601);

}  // namespace rabi
