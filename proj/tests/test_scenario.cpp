#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rabi/conventions.hpp"
#include "rabi/scenario.hpp"

using namespace rabi;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json small_free() {
  return json::parse(R"({
    "params": {"omega_r": 0.5, "delta_omega": 0.5},
    "grid": {"n": 256, "nu_min": -4.0, "nu_max": 4.0},
    "initial_state": {"center": 0.0, "sigma": 0.2, "level": "ground"},
    "potential": {"kind": "none"},
    "solver": {"kind": "free"},
    "tau": {"end": 2.0, "samples": 5}
  })");
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rabi_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> violations(const json& j) {
  try {
    parse_scenario(j);
  } catch (const ConfigError& e) {
    return e.violations();
  }
  return {};
}

bool mentions(const std::vector<std::string>& v, const std::string& s) {
  for (const auto& x : v)
    if (x.find(s) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Config, ParsesDefaults) {
  const ScenarioConfig c = parse_scenario(small_free());
  EXPECT_EQ(c.grid_n, 256u);
  EXPECT_EQ(c.solver, SolverKind::free);
  EXPECT_EQ(c.frame, Frame::interaction);
  EXPECT_EQ(c.tau_grid().size(), 5u);
  EXPECT_EQ(c.tau_grid().back(), 2.0);
  // Round trip through the resolved form.
  const ScenarioConfig d = parse_scenario(to_json(c));
  EXPECT_EQ(to_json(d), to_json(c));
}

TEST(Config, RejectsUnknownKeysEverywhere) {
  json j = small_free();
  j["extra"] = 1;
  j["grid"]["points"] = 3;
  j["phase"] = {{"noise", {{"sigma", 1.0}}}};
  const auto v = violations(j);
  EXPECT_TRUE(mentions(v, "extra: unknown key"));
  EXPECT_TRUE(mentions(v, "grid.points: unknown key"));
  EXPECT_TRUE(mentions(v, "phase.noise.sigma: unknown key"));
}

TEST(Config, ListsEveryViolation) {
  json j = small_free();
  j["params"]["omega_r"] = -1.0;
  j["grid"]["n"] = 300;
  j["initial_state"]["sigma"] = 0.0;
  j["initial_state"]["level"] = "middle";
  j["tau"]["samples"] = 1;
  j["solver"]["kind"] = "linear";
  const auto v = violations(j);
  EXPECT_TRUE(mentions(v, "params.omega_r"));
  EXPECT_TRUE(mentions(v, "grid.n"));
  EXPECT_TRUE(mentions(v, "initial_state.sigma"));
  EXPECT_TRUE(mentions(v, "initial_state.level"));
  EXPECT_TRUE(mentions(v, "tau.samples"));
  EXPECT_TRUE(mentions(v, "solver linear: needs potential linear"));
  EXPECT_GE(v.size(), 6u);
}

TEST(Config, TypeErrors) {
  json j = small_free();
  j["params"]["kappa"] = "big";
  j["grid"]["n"] = 256.5;
  j["phase"] = {{"chirp", 1}};
  const auto v = violations(j);
  EXPECT_TRUE(mentions(v, "params.kappa: expected a number"));
  EXPECT_TRUE(mentions(v, "grid.n: expected an integer"));
  EXPECT_TRUE(mentions(v, "phase.chirp: expected true or false"));
}

TEST(Config, SolverPotentialCompatibility) {
  json j = small_free();
  j["params"]["kappa"] = 1.0;
  EXPECT_TRUE(mentions(violations(j), "potential.kind none"));
  j["potential"]["kind"] = "linear";
  EXPECT_TRUE(mentions(violations(j), "solver free: needs potential none"));
  j["solver"]["kind"] = "perturbative";
  EXPECT_TRUE(mentions(violations(j), "solver perturbative: needs potential quadratic"));
  j["solver"]["kind"] = "linear";
  EXPECT_TRUE(violations(j).empty());
  j["phase"] = {{"noise", {{"s", 0.1}}}};
  EXPECT_TRUE(mentions(violations(j), "phase noise is not supported"));
  j = small_free();
  j["phase"] = {{"chirp", true}};
  EXPECT_TRUE(mentions(violations(j), "phase.chirp"));
  j = small_free();
  j["potential"] = {{"kind", "tabulated"}, {"values", std::vector<double>(256, 0.0)}};
  j["solver"]["kind"] = "perturbative";
  EXPECT_TRUE(mentions(violations(j), "tabulated"));
  j["solver"]["kind"] = "oracle";
  EXPECT_TRUE(violations(j).empty());
}

TEST(Config, LoadErrors) {
  const fs::path d = scratch("load");
  fs::create_directories(d);
  EXPECT_THROW(load_scenario(d / "missing.json"), ConfigError);
  std::ofstream(d / "bad.json") << "{ not json";
  EXPECT_THROW(load_scenario(d / "bad.json"), ConfigError);
}

TEST(Run, BundleLayout) {
  const fs::path d = scratch("layout");
  const auto sum = run_scenario(parse_scenario(small_free()), d, Exec::serial);
  ASSERT_EQ(sum.tau.size(), 5u);
  EXPECT_TRUE(fs::exists(d / "manifest.json"));
  EXPECT_TRUE(fs::exists(d / "populations.csv"));
  EXPECT_TRUE(fs::exists(d / "states/state_0004.csv"));
  EXPECT_TRUE(fs::exists(d / "elements/elements_0004.csv"));
  EXPECT_FALSE(fs::exists(d / "noise.csv"));
  EXPECT_EQ(slurp(d / "states/state_0000.csv").substr(0, 39), "nu,re_psi_e,im_psi_e,re_psi_g,im_psi_g\n");
  EXPECT_EQ(slurp(d / "elements/elements_0000.csv").substr(0, 18), "nu,abs_u_ee,arg_u_");
  const json m = json::parse(slurp(d / "manifest.json"));
  EXPECT_EQ(m["conventions"].size(), kConventions.size());
  EXPECT_TRUE(m.contains("seeds"));
  EXPECT_EQ(m["config"], to_json(parse_scenario(small_free())));
  // The manifest alone reproduces the run.
  const fs::path d2 = scratch("layout2");
  run_scenario(parse_scenario(m["config"]), d2, Exec::serial);
  EXPECT_EQ(slurp(d / "states/state_0003.csv"), slurp(d2 / "states/state_0003.csv"));
}

TEST(Run, NoiseCsvAndDeterminism) {
  json j = small_free();
  j["solver"]["kind"] = "oracle";
  j["solver"]["d_tau"] = 0.01;
  j["phase"] = {{"noise", {{"s", 0.2}, {"seed", 42}, {"d_tau", 0.05}}}};
  const auto cfg = parse_scenario(j);
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  run_scenario(cfg, a, Exec::serial);
  run_scenario(cfg, b, Exec::parallel);
  EXPECT_EQ(slurp(a / "noise.csv").substr(0, 15), "tau,delta_phi\n0");
  for (int m = 0; m < 5; ++m) {
    const std::string f = "states/state_000" + std::to_string(m) + ".csv";
    EXPECT_EQ(slurp(a / f), slurp(b / f));
  }
  const json man = json::parse(slurp(a / "manifest.json"));
  EXPECT_EQ(man["seeds"]["noise"], 42);
}

TEST(Compare, IdenticalAndIncomparable) {
  const fs::path a = scratch("cmp_a"), b = scratch("cmp_b"), c = scratch("cmp_c");
  run_scenario(parse_scenario(small_free()), a, Exec::serial);
  run_scenario(parse_scenario(small_free()), b, Exec::parallel);
  const auto m = compare_solutions(a, b);
  EXPECT_EQ(m.max_abs, 0.0);
  EXPECT_EQ(m.max_l2, 0.0);
  ASSERT_EQ(m.samples.size(), 5u);
  json j = small_free();
  j["grid"]["n"] = 512;
  run_scenario(parse_scenario(j), c, Exec::serial);
  EXPECT_THROW(compare_solutions(a, c), IncomparableError);
  j = small_free();
  j["tau"]["end"] = 3.0;
  run_scenario(parse_scenario(j), c, Exec::serial);
  EXPECT_THROW(compare_solutions(a, c), IncomparableError);
  EXPECT_THROW(compare_solutions(a, scratch("nothing")), IncomparableError);
}

TEST(Compare, FreeAgainstOracle) {
  json j = small_free();
  const fs::path a = scratch("fo_a"), b = scratch("fo_b");
  run_scenario(parse_scenario(j), a, Exec::serial);
  j["solver"] = {{"kind", "oracle"}, {"d_tau", 1e-3}};
  run_scenario(parse_scenario(j), b, Exec::serial);
  const auto m = compare_solutions(a, b);
  EXPECT_LT(m.max_abs, 1e-5);
  EXPECT_GT(m.max_abs, 0.0);
}

TEST(Compare, PerturbativeGapShrinks) {
  json j = json::parse(R"({
    "params": {"omega_r": 0.5, "delta_omega": -0.5, "epsilon": 0.001},
    "grid": {"n": 256, "nu_min": -4.0, "nu_max": 4.0},
    "initial_state": {"center": 0.0, "sigma": 0.1},
    "potential": {"kind": "quadratic"},
    "solver": {"kind": "perturbative", "order": 0, "richardson_levels": 2},
    "tau": {"end": 4.0, "samples": 33}
  })");
  std::vector<double> gaps;
  fs::path prev;
  for (int n = 0; n <= 4; ++n) {
    j["solver"]["order"] = n;
    const fs::path d = scratch("pt" + std::to_string(n));
    run_scenario(parse_scenario(j), d, Exec::serial);
    if (n > 0) gaps.push_back(compare_solutions(prev, d).max_l2);
    prev = d;
  }
  for (std::size_t i = 1; i < gaps.size(); ++i) EXPECT_LT(gaps[i], 0.5 * gaps[i - 1]);
}

TEST(Selftest, Passes) {
  std::ostringstream os;
  EXPECT_TRUE(run_selftest(os));
  EXPECT_EQ(os.str().find("FAIL"), std::string::npos);
}
