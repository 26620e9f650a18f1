#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "rabi/oracle.hpp"
#include "rabi/resonance.hpp"

using namespace rabi;

TEST(DisplacementAlgebra, DefaultGrid) {
  SimulationParams p;
  p.omega_r = 1.0;
  p.delta_omega = 1.0;
  const auto r = check_displacement_algebra(default_grid(), p);
  EXPECT_TRUE(r.integer_shift);
  for (double d : r.deviation) EXPECT_LE(d, 1e-14);
}

TEST(DisplacementAlgebra, NoRecoil) {
  SimulationParams p;
  p.omega_r = 0.0;
  p.delta_omega = 0.4;
  const auto r = check_displacement_algebra(default_grid(), p);
  EXPECT_LE(r.max_deviation(), 1e-15);
}

TEST(DisplacementAlgebra, RandomSweep) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> dw(-2, 2), w(0.01, 1.5);
  for (int t = 0; t < 100; ++t) {
    SimulationParams p;
    p.omega_r = w(rng);
    p.delta_omega = dw(rng);
    EXPECT_TRUE(check_displacement_algebra(default_grid(), p).passed()) << p.omega_r;
  }
}

TEST(ResonantPair, Examples) {
  SimulationParams p;
  p.omega_r = 1.0;
  p.delta_omega = 0.0;
  const auto [m, pl] = resonant_pair(p);
  EXPECT_EQ(m, -1.0);
  EXPECT_EQ(pl, 1.0);
  p.omega_r = 0.0;
  p.delta_omega = 0.3;
  const auto [m0, p0] = resonant_pair(p);
  EXPECT_EQ(m0, p0);
  EXPECT_DOUBLE_EQ(m0, -0.3);
}

TEST(ResonantPair, SplitIsTwoRecoils) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> dw(-5, 5), w(0.0, 3);
  for (int t = 0; t < 1000; ++t) {
    SimulationParams p;
    p.omega_r = w(rng);
    p.delta_omega = dw(rng);
    const auto [m, pl] = resonant_pair(p);
    const double ulp = std::numeric_limits<double>::epsilon() * std::max(std::abs(m), std::abs(pl));
    EXPECT_LE(std::abs((pl - m) - 2 * p.omega_r), ulp);
    EXPECT_NEAR(detuning(DetuningBranch::plus, pl, p.delta_omega, p.omega_r), 0.0, 1e-15);
    EXPECT_NEAR(detuning(DetuningBranch::minus, m, p.delta_omega, p.omega_r), 0.0, 1e-15);
  }
}

TEST(ResonantPair, OracleTransferPeak) {
  // Narrow-packet scan: the transfer maximum sits at the minus-branch momentum.
  const MomentumGrid g(1024, -8, 8);
  SimulationParams p;
  p.omega_r = 0.5;
  p.delta_omega = 0.7;
  const double sigma = 0.05;
  const double nu_minus = resonant_pair(p).first;
  OracleConfig c;
  c.d_tau = 5e-3;
  c.phase = PhaseFunction::constant_rate(p.delta_omega);
  c.store_every = 1 << 30;
  double best_nu = 0, best = -1;
  for (int k = -10; k <= 10; ++k) {
    const double nu = nu_minus + 0.02 * k;
    const auto s = split_step_evolve(gaussian_state(g, nu, sigma, Level::ground), c, p, kPi / 2).back();
    if (s.population_e() > best) {
      best = s.population_e();
      best_nu = nu;
    }
  }
  EXPECT_NEAR(best_nu, nu_minus, sigma);
}
