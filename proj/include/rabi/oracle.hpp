#pragma once

// Strang split-step integrator of the full coupled spinor equation
//   i d/dtau psi = [nu^2/(4 omega_r) + V(zeta) + (D sigma_+ + h.c.)] psi,
//   D = exp(i(2 omega_r zeta + phi(tau))).
// This is the reference every closed-form and perturbative result is checked
// against.

#include <vector>

#include "rabi/core.hpp"
#include "rabi/phase.hpp"
#include "rabi/potential.hpp"

namespace rabi {

struct OracleConfig {
  double d_tau = 1e-3;
  PotentialSpec potential;
  PhaseFunction phase;
  int store_every = 1;
  Frame output_frame = Frame::interaction;
  Exec exec = Exec::serial;
  // Largest |psi| tolerated in the outermost `edge_width` momentum samples.
  double edge_tolerance = 1e-8;
  std::size_t edge_width = 4;

  void validate(const MomentumGrid& grid) const;
};

// 1e-3 * 2 pi / mu_max with mu_max the largest effective Rabi frequency on the grid.
double default_oracle_step(const MomentumGrid& grid, const SimulationParams& params, double rate);

// Integrates from state0.tau to tau_end. The step is shrunk (never grown) so
// that tau_end is hit exactly. Returns the initial state, every
// `store_every`-th step and the final state, all in cfg.output_frame.
// Internal energies in params are ignored (rotating frame).
std::vector<SpinorState> split_step_evolve(const SpinorState& state0, const OracleConfig& cfg,
                                           const SimulationParams& params, double tau_end);

// Same integrator with the internal energies eps_e, eps_g kept in the
// Hamiltonian, so lab-frame output includes exp(-i eps tau).
std::vector<SpinorState> lab_frame_evolve(const SpinorState& state0, const OracleConfig& cfg,
                                          const SimulationParams& params, double tau_end);

// Final state at tau_end from `levels` runs at d_tau, d_tau/2, ...,
// combined by repeated Richardson extrapolation (the splitting error is
// even in the step).
SpinorState split_step_extrapolated(const SpinorState& state0, const OracleConfig& cfg,
                                    const SimulationParams& params, double tau_end,
                                    int levels = 3);

// Applies exp(-+i tau (nu^2/(4 omega_r) + V)) by split-stepping the
// external Hamiltonian alone (sign = +1 forward, -1 backward).
std::vector<cplx> external_evolve(const MomentumGrid& grid, std::span<const cplx> psi,
                                  const PotentialSpec& potential, double omega_r, double tau,
                                  double d_tau, int sign);

}  // namespace rabi
