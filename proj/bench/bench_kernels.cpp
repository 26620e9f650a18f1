#include <benchmark/benchmark.h>

#include "rabi/analytic.hpp"
#include "rabi/oracle.hpp"
#include "rabi/perturb.hpp"

using namespace rabi;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(1) ? Exec::parallel : Exec::serial; }

SimulationParams fig1() {
  SimulationParams p;
  p.omega_r = 1.0;
  p.delta_omega = 1.0;
  return p;
}

void BM_OracleSteps(benchmark::State& st) {
  const MomentumGrid g(static_cast<std::size_t>(st.range(0)), -8, 8);
  const auto s0 = gaussian_state(g, 0.0, 0.3, Level::ground);
  OracleConfig c;
  c.d_tau = 1e-3;
  c.phase = PhaseFunction::constant_rate(1.0);
  c.potential = PotentialSpec::quadratic(1e-3);
  c.store_every = 1 << 30;
  c.exec = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(split_step_evolve(s0, c, fig1(), 0.1));
  st.SetItemsProcessed(st.iterations() * 100);
}

void BM_FreeElements(benchmark::State& st) {
  const MomentumGrid g(static_cast<std::size_t>(st.range(0)), -8, 8);
  for (auto _ : st) benchmark::DoNotOptimize(free_propagator_elements(g, fig1(), 2.0, 0.0, exec_of(st)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_LinearElements(benchmark::State& st) {
  const MomentumGrid g(static_cast<std::size_t>(st.range(0)), -12.8, 12.8);
  SimulationParams p;
  p.omega_r = 0.1;
  p.kappa = 1.0;
  for (auto _ : st) benchmark::DoNotOptimize(linear_propagator_elements(g, p, 1.5, exec_of(st)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

struct ConvolveSetup {
  MomentumGrid grid{256, -4, 4};
  SimulationParams params;
  std::vector<SpinorState> source;
  explicit ConvolveSetup(std::size_t steps) {
    params.omega_r = 0.5;
    params.delta_omega = -0.5;
    const auto s = gaussian_state(grid, 0.0, 0.2, Level::ground);
    for (std::size_t m = 0; m <= steps; ++m) source.push_back(s);
  }
};

// range(1): 0 naive, 1 tabulated serial, 2 tabulated parallel
void BM_GreensConvolve(benchmark::State& st) {
  const ConvolveSetup s(static_cast<std::size_t>(st.range(0)));
  std::vector<SpinorState> v, d;
  for (auto _ : st) {
    if (st.range(1) == 0)
      greens_convolve_naive(s.grid, s.params, 0.05, s.source, v, d);
    else
      greens_convolve(s.grid, s.params, 0.05, s.source, v, d,
                      st.range(1) == 2 ? Exec::parallel : Exec::serial);
    benchmark::DoNotOptimize(v.data());
  }
}

}  // namespace

BENCHMARK(BM_OracleSteps)->ArgsProduct({{1024, 4096}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FreeElements)->ArgsProduct({{1024, 16384}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LinearElements)->ArgsProduct({{256, 1024}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GreensConvolve)->ArgsProduct({{32, 128}, {0, 1, 2}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
