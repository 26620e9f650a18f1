#pragma once

// Order-by-order Green's-function solution for a weak potential whose
// Heisenberg momentum expands as nu_S = nu + sum_k eps^k (g_k nu + h_k zeta).

#include <memory>
#include <utility>
#include <vector>

#include "rabi/core.hpp"

namespace rabi {

// theta(t) exp(-i delta t) sin(mu t) / mu with t = tau - tau_prime and
// delta the branch detuning at nu for constant rate params.delta_omega.
cplx greens_kernel(DetuningBranch branch, double nu, double tau, double tau_prime,
                   const SimulationParams& params);

// d/dtau of greens_kernel (1 at t = 0+).
cplx greens_kernel_derivative(DetuningBranch branch, double nu, double tau, double tau_prime,
                              const SimulationParams& params);

// Distributional check of the kernel normalization: for the test function
// phi(t) = exp(-(t - center)^2 / (2 width^2) + i freq t),
//   int_{tau'}^{inf} G(t - tau') [phi'' - 2 i delta phi' + phi](t) dt = phi(tau')
// (the transpose of the oscillator operator acting on phi). The integral is
// done by composite Simpson with `steps` intervals out to center + 12 width.
struct ImpulseCheck {
  cplx integral;
  cplx expected;
  double error() const { return std::abs(integral - expected); }
};
ImpulseCheck greens_impulse_check(DetuningBranch branch, double nu, const SimulationParams& params,
                                  double tau_prime, double center, double width, double freq,
                                  int steps = 20000);

// Source of the order-k coefficients (g_k(tau), h_k(tau)).
class CoefficientGenerator {
 public:
  virtual ~CoefficientGenerator() = default;
  virtual std::pair<double, double> operator()(int k, double tau) const = 0;
};

// Quadratic potential V = epsilon zeta^2.
std::pair<double, double> quadratic_detuning_coeffs(int k, double tau, double omega_r);

class QuadraticCoeffs final : public CoefficientGenerator {
 public:
  QuadraticCoeffs(double omega_r, double epsilon);
  std::pair<double, double> operator()(int k, double tau) const override;
  double omega_r() const { return omega_r_; }
  double epsilon() const { return epsilon_; }
  // sqrt(epsilon / omega_r)
  double trap_frequency() const;

 private:
  double omega_r_;
  double epsilon_;
};

// Returns -+delta^(order) applied to the branch's row of `state` (excited
// for plus, ground for minus); the other row is zero.
// delta^(k) = (g_k nu + h_k zeta) / 2, zeta applied spectrally.
SpinorState apply_order_correction(int order, const SpinorState& state, double tau,
                                   const CoefficientGenerator& coeffs, DetuningBranch branch);

struct PerturbationSeries {
  MomentumGrid grid;
  std::vector<double> tau_grid;
  double epsilon = 0.0;
  // orders[k][m] = psi^(k)(tau_m); derivatives likewise.
  std::vector<std::vector<SpinorState>> orders;
  std::vector<std::vector<SpinorState>> derivatives;

  int max_order() const { return static_cast<int>(orders.size()) - 1; }
  // sum_{k <= n} epsilon^k psi^(k)(tau_m); n < 0 means all orders.
  SpinorState resummed(std::size_t m, int n = -1) const;
  std::vector<SpinorState> resummed() const;
};

// Hard limit on stored orders.
inline constexpr int kMaxPerturbativeOrder = 40;
// Memory budget for the order/derivative tracks, bytes.
inline constexpr double kTrackBudgetBytes = 2.0e9;

// state0 must be an interaction-picture state at tau = 0; tau_grid must be
// uniform and start at 0. The quadratic potential strength is params.epsilon.
PerturbationSeries perturbative_solve(const SpinorState& state0, const SimulationParams& params,
                                      const std::vector<double>& tau_grid, int N,
                                      Exec exec = Exec::serial, double phi0 = 0.0);

PerturbationSeries perturbative_solve(const SpinorState& state0, const SimulationParams& params,
                                      const std::vector<double>& tau_grid, int N,
                                      const CoefficientGenerator& coeffs, Exec exec = Exec::serial,
                                      double phi0 = 0.0);

// Repeated Richardson extrapolation of the trapezoid solution. The solver
// runs on tau_grid refined by 2, 4, ... 2^(levels-1); the h^2, h^4, ...
// error terms are eliminated at the samples of tau_grid. levels = 1 is
// plain perturbative_solve.
PerturbationSeries perturbative_solve_extrapolated(const SpinorState& state0,
                                                   const SimulationParams& params,
                                                   const std::vector<double>& tau_grid, int N,
                                                   int levels, Exec exec = Exec::serial,
                                                   double phi0 = 0.0);

// Order k >= 1 from sources f[m] (both rows) by trapezoid convolution with
// the retarded kernel; value and derivative. The serial reference loop and
// the parallel one give identical bits.
void greens_convolve(const MomentumGrid& grid, const SimulationParams& params, double d_tau,
                     const std::vector<SpinorState>& source, std::vector<SpinorState>& value,
                     std::vector<SpinorState>& derivative, Exec exec);

// Straightforward O(T^2 n) double loop that evaluates the kernel on the fly;
// kept as the reference for greens_convolve.
void greens_convolve_naive(const MomentumGrid& grid, const SimulationParams& params, double d_tau,
                           const std::vector<SpinorState>& source, std::vector<SpinorState>& value,
                           std::vector<SpinorState>& derivative);

}  // namespace rabi
