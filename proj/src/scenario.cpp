#include "rabi/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "rabi/analytic.hpp"
#include "rabi/conventions.hpp"
#include "rabi/oracle.hpp"
#include "rabi/perturb.hpp"
#include "rabi/phase.hpp"
#include "rabi/resonance.hpp"
#include "rabi/specfun_checks.hpp"

namespace rabi {

namespace fs = std::filesystem;
using nlohmann::json;

const char* to_string(SolverKind s) {
  switch (s) {
    case SolverKind::free: return "free";
    case SolverKind::linear: return "linear";
    case SolverKind::perturbative: return "perturbative";
    case SolverKind::oracle: return "oracle";
  }
  return "?";
}

std::vector<double> ScenarioConfig::tau_grid() const {
  std::vector<double> t(tau_samples);
  const double h = tau_end / static_cast<double>(tau_samples - 1);
  for (std::size_t m = 0; m < tau_samples; ++m) t[m] = h * static_cast<double>(m);
  t.back() = tau_end;
  return t;
}

PotentialSpec ScenarioConfig::potential_spec() const {
  switch (potential) {
    case PotentialKind::none: return PotentialSpec::none();
    case PotentialKind::linear: return PotentialSpec::linear(params.kappa);
    case PotentialKind::quadratic: return PotentialSpec::quadratic(params.epsilon);
    case PotentialKind::tabulated: return PotentialSpec::tabulated(potential_values);
  }
  return {};
}

namespace {

// Walks one JSON object, type-checking known keys and reporting the rest.
class Section {
 public:
  Section(const json& j, std::string path, std::vector<std::string>& errs)
      : j_(j), path_(std::move(path)), errs_(errs) {
    if (!j_.is_object()) errs_.push_back(path_ + ": expected an object");
  }
  Section(Section&& o) noexcept
      : j_(o.j_), path_(std::move(o.path_)), errs_(o.errs_), seen_(std::move(o.seen_)) {
    o.armed_ = false;
  }
  ~Section() {
    if (!armed_ || !j_.is_object()) return;
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) errs_.push_back(key(it.key()) + ": unknown key");
  }

  bool has(const std::string& k) {
    seen_.insert(k);
    return j_.is_object() && j_.contains(k);
  }
  void number(const std::string& k, double& out) {
    if (!has(k)) return;
    const json& v = j_.at(k);
    if (!v.is_number()) return bad(k, "expected a number");
    out = v.get<double>();
    if (!std::isfinite(out)) bad(k, "must be finite");
  }
  void integer(const std::string& k, long long& out) {
    if (!has(k)) return;
    const json& v = j_.at(k);
    if (!v.is_number_integer()) return bad(k, "expected an integer");
    out = v.get<long long>();
  }
  void boolean(const std::string& k, bool& out) {
    if (!has(k)) return;
    const json& v = j_.at(k);
    if (!v.is_boolean()) return bad(k, "expected true or false");
    out = v.get<bool>();
  }
  std::optional<std::string> string(const std::string& k) {
    if (!has(k)) return std::nullopt;
    const json& v = j_.at(k);
    if (!v.is_string()) {
      bad(k, "expected a string");
      return std::nullopt;
    }
    return v.get<std::string>();
  }
  template <class E>
  void choice(const std::string& k, E& out, const std::map<std::string, E>& options) {
    const auto s = string(k);
    if (!s) return;
    const auto it = options.find(*s);
    if (it != options.end()) {
      out = it->second;
      return;
    }
    std::string list;
    for (const auto& [name, _] : options) list += (list.empty() ? "" : ", ") + name;
    bad(k, "'" + *s + "' is not one of " + list);
  }
  std::optional<Section> child(const std::string& k) {
    if (!has(k)) return std::nullopt;
    return Section(j_.at(k), key(k), errs_);
  }
  const json& raw(const std::string& k) { return j_.at(k); }
  std::string key(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }
  void bad(const std::string& k, const std::string& msg) { errs_.push_back(key(k) + ": " + msg); }

 private:
  const json& j_;
  std::string path_;
  std::vector<std::string>& errs_;
  std::set<std::string> seen_;
  bool armed_ = true;  // a moved-from section reports nothing
};

const std::map<std::string, Level> kLevels{{"excited", Level::excited}, {"ground", Level::ground}};
const std::map<std::string, SolverKind> kSolvers{{"free", SolverKind::free},
                                                 {"linear", SolverKind::linear},
                                                 {"perturbative", SolverKind::perturbative},
                                                 {"oracle", SolverKind::oracle}};
const std::map<std::string, PotentialKind> kPotentials{{"none", PotentialKind::none},
                                                       {"linear", PotentialKind::linear},
                                                       {"quadratic", PotentialKind::quadratic},
                                                       {"tabulated", PotentialKind::tabulated}};
const std::map<std::string, Frame> kFrames{{"interaction", Frame::interaction}, {"lab", Frame::lab}};

bool is_pow2(long long n) { return n >= 2 && (n & (n - 1)) == 0; }

}  // namespace

ScenarioConfig parse_scenario(const json& j) {
  ScenarioConfig c;
  std::vector<std::string> errs;
  long long n = static_cast<long long>(c.grid_n), samples = static_cast<long long>(c.tau_samples);
  long long order = c.order, levels = c.richardson_levels, seed = 0;
  {
    Section root(j, "", errs);
    if (auto s = root.child("params")) {
      s->number("omega_r", c.params.omega_r);
      s->number("delta_omega", c.params.delta_omega);
      s->number("kappa", c.params.kappa);
      s->number("epsilon", c.params.epsilon);
      s->number("eps_e", c.params.eps_e);
      s->number("eps_g", c.params.eps_g);
    } else {
      errs.push_back("params: required");
    }
    if (auto s = root.child("grid")) {
      s->integer("n", n);
      s->number("nu_min", c.nu_min);
      s->number("nu_max", c.nu_max);
    }
    if (auto s = root.child("initial_state")) {
      s->number("center", c.center);
      s->number("sigma", c.sigma);
      s->choice("level", c.level, kLevels);
    }
    if (auto s = root.child("potential")) {
      s->choice("kind", c.potential, kPotentials);
      if (s->has("values")) {
        const json& v = s->raw("values");
        if (!v.is_array()) {
          s->bad("values", "expected an array of numbers");
        } else {
          for (const auto& x : v) {
            if (!x.is_number()) {
              s->bad("values", "expected an array of numbers");
              break;
            }
            c.potential_values.push_back(x.get<double>());
          }
        }
      }
    }
    if (auto s = root.child("solver")) {
      s->choice("kind", c.solver, kSolvers);
      s->integer("order", order);
      s->integer("richardson_levels", levels);
      s->number("d_tau", c.oracle_d_tau);
    } else {
      errs.push_back("solver: required");
    }
    if (auto s = root.child("phase")) {
      s->number("phi0", c.phi0);
      s->boolean("chirp", c.chirp);
      if (auto ns = s->child("noise")) {
        ns->number("s", c.noise_s);
        ns->integer("seed", seed);
        ns->number("d_tau", c.noise_d_tau);
      }
    }
    if (auto s = root.child("tau")) {
      s->number("end", c.tau_end);
      s->integer("samples", samples);
    }
    root.choice("frame", c.frame, kFrames);
    if (auto s = root.string("output_dir")) c.output_dir = *s;
  }

  // Values
  if (!(c.params.omega_r > 0.0)) errs.push_back("params.omega_r: must be > 0");
  if (c.params.epsilon < 0.0) errs.push_back("params.epsilon: must be >= 0");
  if (!is_pow2(n)) errs.push_back("grid.n: must be a power of two >= 2");
  if (!(c.nu_max > c.nu_min)) errs.push_back("grid: nu_max must exceed nu_min");
  if (!(c.sigma > 0.0)) errs.push_back("initial_state.sigma: must be > 0");
  if (c.center < c.nu_min || c.center >= c.nu_max)
    errs.push_back("initial_state.center: outside the grid");
  if (!(c.tau_end > 0.0)) errs.push_back("tau.end: must be > 0");
  if (samples < 2) errs.push_back("tau.samples: must be >= 2");
  if (c.noise_s < 0.0) errs.push_back("phase.noise.s: must be >= 0");
  if (!(c.noise_d_tau > 0.0)) errs.push_back("phase.noise.d_tau: must be > 0");
  if (seed < 0) errs.push_back("phase.noise.seed: must be >= 0");
  if (c.oracle_d_tau < 0.0) errs.push_back("solver.d_tau: must be > 0 (or omitted)");
  if (order < 0 || order > kMaxPerturbativeOrder)
    errs.push_back("solver.order: must be in 0.." + std::to_string(kMaxPerturbativeOrder));
  if (levels < 1 || levels > 4) errs.push_back("solver.richardson_levels: must be in 1..4");

  // Potential consistency with the strengths in params.
  switch (c.potential) {
    case PotentialKind::none:
      if (c.params.kappa != 0.0 || c.params.epsilon != 0.0)
        errs.push_back("potential.kind none: params.kappa and params.epsilon must be 0");
      break;
    case PotentialKind::linear:
      if (c.params.epsilon != 0.0) errs.push_back("potential.kind linear: params.epsilon must be 0");
      break;
    case PotentialKind::quadratic:
      if (c.params.kappa != 0.0) errs.push_back("potential.kind quadratic: params.kappa must be 0");
      break;
    case PotentialKind::tabulated:
      if (c.params.kappa != 0.0 || c.params.epsilon != 0.0)
        errs.push_back("potential.kind tabulated: params.kappa and params.epsilon must be 0");
      if (is_pow2(n) && c.potential_values.size() != static_cast<std::size_t>(n))
        errs.push_back("potential.values: need grid.n entries");
      break;
  }
  if (c.potential != PotentialKind::tabulated && !c.potential_values.empty())
    errs.push_back("potential.values: only for kind tabulated");

  // Solver compatibility.
  const bool noisy = c.noise_s > 0.0;
  switch (c.solver) {
    case SolverKind::free:
      if (c.potential != PotentialKind::none) errs.push_back("solver free: needs potential none");
      break;
    case SolverKind::linear:
      if (c.potential != PotentialKind::linear) errs.push_back("solver linear: needs potential linear");
      if (noisy) errs.push_back("solver linear: phase noise is not supported (use oracle)");
      break;
    case SolverKind::perturbative:
      if (c.potential == PotentialKind::tabulated)
        errs.push_back("solver perturbative: no series coefficients for tabulated potentials");
      else if (c.potential != PotentialKind::quadratic)
        errs.push_back("solver perturbative: needs potential quadratic");
      if (noisy) errs.push_back("solver perturbative: phase noise is not supported (use oracle)");
      if (c.frame == Frame::lab) errs.push_back("solver perturbative: only frame interaction");
      break;
    case SolverKind::oracle:
      break;
  }
  if (c.chirp && c.potential != PotentialKind::linear)
    errs.push_back("phase.chirp: only meaningful with potential linear");
  if (c.frame == Frame::lab && c.solver == SolverKind::free && noisy)
    errs.push_back("frame lab: not available for noisy free runs");

  if (!errs.empty()) throw ConfigError(errs);
  c.grid_n = static_cast<std::size_t>(n);
  c.tau_samples = static_cast<std::size_t>(samples);
  c.order = static_cast<int>(order);
  c.richardson_levels = static_cast<int>(levels);
  c.noise_seed = static_cast<std::uint64_t>(seed);
  return c;
}

ScenarioConfig load_scenario(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file " + path.string()});
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({"config is not valid JSON: " + std::string(e.what())});
  }
  return parse_scenario(j);
}

json to_json(const ScenarioConfig& c) {
  auto name = [](const auto& map, auto v) {
    for (const auto& [k, x] : map)
      if (x == v) return k;
    return std::string("?");
  };
  json j;
  j["params"] = {{"omega_r", c.params.omega_r}, {"delta_omega", c.params.delta_omega},
                 {"kappa", c.params.kappa},     {"epsilon", c.params.epsilon},
                 {"eps_e", c.params.eps_e},     {"eps_g", c.params.eps_g}};
  j["grid"] = {{"n", c.grid_n}, {"nu_min", c.nu_min}, {"nu_max", c.nu_max}};
  j["initial_state"] = {{"center", c.center}, {"sigma", c.sigma}, {"level", name(kLevels, c.level)}};
  j["potential"] = {{"kind", name(kPotentials, c.potential)}};
  if (c.potential == PotentialKind::tabulated) j["potential"]["values"] = c.potential_values;
  j["solver"] = {{"kind", name(kSolvers, c.solver)}};
  if (c.solver == SolverKind::perturbative) {
    j["solver"]["order"] = c.order;
    j["solver"]["richardson_levels"] = c.richardson_levels;
  }
  if (c.solver == SolverKind::oracle) j["solver"]["d_tau"] = c.oracle_d_tau;
  j["phase"] = {{"phi0", c.phi0},
                {"chirp", c.chirp},
                {"noise", {{"s", c.noise_s}, {"seed", c.noise_seed}, {"d_tau", c.noise_d_tau}}}};
  j["tau"] = {{"end", c.tau_end}, {"samples", c.tau_samples}};
  j["frame"] = name(kFrames, c.frame);
  if (!c.output_dir.empty()) j["output_dir"] = c.output_dir;
  return j;
}

namespace {

std::string numbered(const std::string& stem, std::size_t m) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%04zu.csv", m);
  return stem + buf;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw Error("cannot write " + p.string());
  os.precision(17);
  return os;
}

void write_state(const fs::path& p, const SpinorState& s) {
  auto os = open_out(p);
  os << "nu,re_psi_e,im_psi_e,re_psi_g,im_psi_g\n";
  for (std::size_t j = 0; j < s.grid.size(); ++j)
    os << s.grid.nu(j) << ',' << s.psi_e[j].real() << ',' << s.psi_e[j].imag() << ','
       << s.psi_g[j].real() << ',' << s.psi_g[j].imag() << '\n';
}

void write_elements(const fs::path& p, const PropagatorElements& u) {
  auto os = open_out(p);
  os << "nu,abs_u_ee,arg_u_ee,abs_u_eg,arg_u_eg,abs_u_ge,arg_u_ge,abs_u_gg,arg_u_gg\n";
  for (std::size_t j = 0; j < u.grid.size(); ++j) {
    os << u.grid.nu(j);
    for (const auto* v : {&u.u_ee, &u.u_eg, &u.u_ge, &u.u_gg})
      os << ',' << std::abs((*v)[j]) << ',' << std::arg((*v)[j]);
    os << '\n';
  }
}

SpinorState read_state(const fs::path& p, const MomentumGrid& g) {
  std::ifstream in(p);
  if (!in) throw IncomparableError("missing state file " + p.string());
  std::string line;
  std::getline(in, line);
  SpinorState s(g, Frame::interaction, 0.0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (!std::getline(in, line)) throw IncomparableError("short state file " + p.string());
    std::istringstream ls(line);
    double v[5];
    char comma;
    ls >> v[0] >> comma >> v[1] >> comma >> v[2] >> comma >> v[3] >> comma >> v[4];
    if (!ls) throw IncomparableError("malformed row in " + p.string());
    s.psi_e[j] = {v[1], v[2]};
    s.psi_g[j] = {v[3], v[4]};
  }
  return s;
}

json read_manifest(const fs::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw IncomparableError("no manifest.json in " + dir.string());
  return json::parse(in);
}

}  // namespace

RunSummary run_scenario(const ScenarioConfig& cfg, const fs::path& out_dir, Exec exec) {
  const MomentumGrid grid = cfg.grid();
  const std::vector<double> tau = cfg.tau_grid();
  const SpinorState s0 = gaussian_state(grid, cfg.center, cfg.sigma, cfg.level);
  SimulationParams params = cfg.params;
  params.validate();

  PhaseFunction phase = PhaseFunction::constant_rate(params.delta_omega, cfg.phi0);
  if (cfg.chirp) phase.chirp = chirp_for_linear(params, cfg.center, cfg.phi0).chirp;
  NoiseParams np{cfg.noise_s, cfg.noise_seed, cfg.noise_d_tau};
  if (cfg.noise_s > 0.0) phase.noise = sample_phase_noise(np, cfg.tau_end);

  std::vector<SpinorState> states;
  std::vector<PropagatorElements> elements;
  json solver_info;
  const PotentialKind restore_kind =
      cfg.potential == PotentialKind::linear ? PotentialKind::linear : PotentialKind::none;

  switch (cfg.solver) {
    case SolverKind::free:
      if (phase.noise) {
        SpinorState s = s0;
        for (double t : tau) {
          s = propagate_free_phase(s, params, phase, t, exec);
          states.push_back(s);
        }
      } else {
        for (double t : tau) {
          elements.push_back(free_propagator_elements(grid, params, t, cfg.phi0, exec));
          states.push_back(apply_elements(elements.back(), s0));
        }
      }
      break;
    case SolverKind::linear:
      for (double t : tau) {
        elements.push_back(linear_propagator_elements(grid, params, t, phase, exec));
        states.push_back(apply_elements(elements.back(), s0));
      }
      solver_info["kappa_guard"] = kKappaMin;
      break;
    case SolverKind::perturbative: {
      const PerturbationSeries ps =
          perturbative_solve_extrapolated(s0, params, tau, cfg.order, cfg.richardson_levels, exec,
                                          cfg.phi0);
      states = ps.resummed();
      solver_info["order"] = cfg.order;
      solver_info["richardson_levels"] = cfg.richardson_levels;
      solver_info["quadrature"] = "composite trapezoid";
      break;
    }
    case SolverKind::oracle: {
      OracleConfig oc;
      oc.potential = cfg.potential_spec();
      oc.phase = phase;
      oc.exec = exec;
      oc.output_frame = cfg.frame;
      const double base = cfg.oracle_d_tau > 0.0 ? cfg.oracle_d_tau
                                                  : default_oracle_step(grid, params, params.delta_omega);
      const double span = tau[1] - tau[0];
      const auto per = static_cast<std::size_t>(std::ceil(span / base - 1e-9));
      oc.d_tau = span / static_cast<double>(per);
      oc.store_every = static_cast<int>(per);
      states = cfg.frame == Frame::lab ? lab_frame_evolve(s0, oc, params, cfg.tau_end)
                                       : split_step_evolve(s0, oc, params, cfg.tau_end);
      solver_info["d_tau"] = oc.d_tau;
      solver_info["steps_per_sample"] = per;
      break;
    }
  }
  if (states.size() != tau.size()) throw Error("internal: solver returned a different sample count");
  if (cfg.frame == Frame::lab && cfg.solver != SolverKind::oracle)
    for (std::size_t m = 0; m < tau.size(); ++m)
      states[m] = lab_frame_restore(states[m], params, tau[m], restore_kind);

  fs::create_directories(out_dir / "states");
  RunSummary sum;
  sum.tau = tau;
  for (std::size_t m = 0; m < tau.size(); ++m) {
    const std::string f = "states/" + numbered("state", m);
    write_state(out_dir / f, states[m]);
    sum.files.push_back(f);
    sum.population_e.push_back(states[m].population_e());
    sum.population_g.push_back(states[m].population_g());
  }
  if (!elements.empty()) {
    fs::create_directories(out_dir / "elements");
    for (std::size_t m = 0; m < elements.size(); ++m) {
      const std::string f = "elements/" + numbered("elements", m);
      write_elements(out_dir / f, elements[m]);
      sum.files.push_back(f);
    }
  }
  {
    auto os = open_out(out_dir / "populations.csv");
    os << "tau,population_e,population_g,norm\n";
    for (std::size_t m = 0; m < tau.size(); ++m)
      os << tau[m] << ',' << sum.population_e[m] << ',' << sum.population_g[m] << ','
         << sum.population_e[m] + sum.population_g[m] << '\n';
    sum.files.push_back("populations.csv");
  }
  if (phase.noise) {
    auto os = open_out(out_dir / "noise.csv");
    write_noise_csv(os, *phase.noise);
    sum.files.push_back("noise.csv");
  }

  json m;
  m["config"] = to_json(cfg);
  json conv = json::object();
  for (const auto& c : kConventions) conv[std::string(c.name)] = std::string(c.rule);
  m["conventions"] = conv;
  m["seeds"] = {{"noise", cfg.noise_seed}};
  m["solver"] = solver_info;
  m["solver"]["kind"] = to_string(cfg.solver);
  m["execution"] = exec == Exec::serial ? "serial" : "parallel";
  m["grid"] = {{"n", grid.size()}, {"nu_min", grid.nu_min()}, {"d_nu", grid.d_nu()}};
  m["tau"] = tau;
  m["frame"] = cfg.frame == Frame::lab ? "lab" : "interaction";
  m["phase_function"] = {{"phi0", phase.phi0}, {"rate", phase.rate}, {"chirp", phase.chirp}};
  m["files"] = sum.files;
  auto os = open_out(out_dir / "manifest.json");
  os << m.dump(2) << '\n';
  return sum;
}

json CompareMetrics::to_json() const {
  json j;
  j["max_abs"] = max_abs;
  j["max_l2"] = max_l2;
  json s = json::array();
  for (const auto& x : samples)
    s.push_back({{"tau", x.tau},
                 {"max_abs", x.max_abs},
                 {"l2", x.l2},
                 {"population_e_diff", x.population_e_diff}});
  j["samples"] = s;
  return j;
}

CompareMetrics compare_solutions(const fs::path& a, const fs::path& b) {
  const json ma = read_manifest(a), mb = read_manifest(b);
  if (ma.at("grid") != mb.at("grid")) throw IncomparableError("bundles use different grids");
  const auto ta = ma.at("tau").get<std::vector<double>>();
  const auto tb = mb.at("tau").get<std::vector<double>>();
  if (ta.size() != tb.size()) throw IncomparableError("bundles have different tau samples");
  for (std::size_t m = 0; m < ta.size(); ++m)
    if (std::abs(ta[m] - tb[m]) > 1e-12 * std::max(1.0, std::abs(ta[m])))
      throw IncomparableError("bundles have different tau samples");
  if (ma.at("frame") != mb.at("frame")) throw IncomparableError("bundles are in different frames");
  const auto& gj = ma.at("grid");
  const auto n = gj.at("n").get<std::size_t>();
  const double nu_min = gj.at("nu_min").get<double>(), d_nu = gj.at("d_nu").get<double>();
  const MomentumGrid g(n, nu_min, nu_min + d_nu * static_cast<double>(n));

  CompareMetrics out;
  for (std::size_t m = 0; m < ta.size(); ++m) {
    const std::string f = "states/" + numbered("state", m);
    const SpinorState sa = read_state(a / f, g), sb = read_state(b / f, g);
    SampleMetrics s;
    s.tau = ta[m];
    double l2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double de = std::abs(sa.psi_e[j] - sb.psi_e[j]);
      const double dg = std::abs(sa.psi_g[j] - sb.psi_g[j]);
      s.max_abs = std::max({s.max_abs, de, dg});
      l2 += de * de + dg * dg;
    }
    s.l2 = std::sqrt(l2 * g.d_nu());
    s.population_e_diff = sa.population_e() - sb.population_e();
    out.max_abs = std::max(out.max_abs, s.max_abs);
    out.max_l2 = std::max(out.max_l2, s.l2);
    out.samples.push_back(s);
  }
  return out;
}

bool run_selftest(std::ostream& os, std::uint64_t seed) {
  bool all = true;
  auto line = [&](bool ok, const std::string& name, double value, double tol) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " (max %.3e, tol %.1e)", value, tol);
    os << (ok ? "PASS " : "FAIL ") << name << buf << '\n';
    all = all && ok;
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dw(-2.0, 2.0), wr(0.01, 1.5);
  std::array<double, 4> worst{};
  double split = 0.0;
  for (int t = 0; t < 100; ++t) {
    SimulationParams p;
    p.omega_r = wr(rng);
    p.delta_omega = dw(rng);
    const auto r = check_displacement_algebra(default_grid(), p);
    for (std::size_t i = 0; i < 4; ++i) worst[i] = std::max(worst[i], r.deviation[i]);
    const auto [m, pl] = resonant_pair(p);
    split = std::max(split, std::abs((pl - m) - 2.0 * p.omega_r) /
                                (std::numeric_limits<double>::epsilon() * std::max(std::abs(m), std::abs(pl))));
  }
  for (std::size_t i = 0; i < 4; ++i)
    line(worst[i] <= 1e-14, "displacement: " + std::string(DisplacementAlgebraReport::kNames[i]),
         worst[i], 1e-14);
  line(split <= 1.0, "resonant pair split 2 omega_r (ulps)", split, 1.0);

  for (const auto& c : specfun_property_suite(1000, seed))
    line(c.passed(), "specfun: " + c.name, c.max_deviation, c.tolerance);
  return all;
}

}  // namespace rabi
