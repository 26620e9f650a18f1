#pragma once

// Closed-form interaction-picture propagators: free particle and linear
// potential, plus the transformation back to the laboratory frame.

#include "rabi/core.hpp"
#include "rabi/phase.hpp"
#include "rabi/potential.hpp"

namespace rabi {

// Below this |kappa - chirp| the linear solution falls back to the free one
// with the drift averaged into the detuning (error O(kappa tau^2)).
inline constexpr double kKappaMin = 1e-3;

// Elements at one momentum for time t after a segment start where the
// coupling phases are theta_eg (excited output at nu) and theta_ge (ground
// output at nu).
ElementSet free_elements_at(double delta_plus, double delta_minus, double t, double theta_eg,
                            double theta_ge);

// d/dt of free_elements_at.
ElementSet free_element_derivatives_at(double delta_plus, double delta_minus, double t,
                                       double theta_eg, double theta_ge);

PropagatorElements free_propagator_elements(const MomentumGrid& grid, const SimulationParams& params,
                                            double tau, double phi0 = 0.0,
                                            Exec exec = Exec::serial);

// Time derivatives of the free elements (same layout).
PropagatorElements free_derivative_elements(const MomentumGrid& grid,
                                            const SimulationParams& params, double tau,
                                            double phi0 = 0.0, Exec exec = Exec::serial);

// Applies elements to an interaction-picture state. Throws GridOverflow when
// the 2 omega_r shift pushes amplitude above 1e-12 off the grid.
SpinorState apply_elements(const PropagatorElements& u, const SpinorState& state);

// Evolves an interaction-picture state from state.tau to state.tau + tau
// under constant Delta omega = params.delta_omega. The drive phase at
// state.tau is phi0 + delta_omega * state.tau.
SpinorState apply_free_propagator(const SpinorState& state, const SimulationParams& params,
                                  double tau, double phi0 = 0.0);

// Free evolution under an arbitrary phase with piecewise-constant rate (noise
// paths, constant rates); one closed-form segment per noise interval.
SpinorState propagate_free_phase(const SpinorState& state, const SimulationParams& params,
                                 const PhaseFunction& phase, double tau_end,
                                 Exec exec = Exec::serial);

// Fundamental-system blocks of the linear-potential oscillator equation for
// one branch at one momentum: u_diag = C / G, u_offdiag = A / B (before the
// drive phase). dA, dC are derivatives with respect to the final detuning.
struct LinearBlocks {
  cplx A, B, C, G;
  cplx dA, dC;
};

enum class LinearBasis { kummer, hermite };

// s = delta(tau) runs linearly from s0 = delta_branch(nu) with slope c.
LinearBlocks linear_blocks(double s0, double c, double tau, LinearBasis basis = LinearBasis::kummer);

// Slope of the branch detuning in the linear potential for a phase with
// chirp coefficient `chirp`: +(kappa - chirp) for plus, -(kappa - chirp) for
// minus.
double linear_drift(DetuningBranch branch, double kappa, double chirp);

// Linear-potential elements; `phase` supplies phi0, the constant rate and
// the chirp (noise is not supported here).
PropagatorElements linear_propagator_elements(const MomentumGrid& grid,
                                              const SimulationParams& params, double tau,
                                              const PhaseFunction& phase, Exec exec = Exec::serial);
PropagatorElements linear_propagator_elements(const MomentumGrid& grid,
                                              const SimulationParams& params, double tau,
                                              Exec exec = Exec::serial);

// Time derivatives of the linear elements from the same fundamental system.
PropagatorElements linear_derivative_elements(const MomentumGrid& grid,
                                              const SimulationParams& params, double tau,
                                              const PhaseFunction& phase, Exec exec = Exec::serial);

// Largest deviation from unitarity of the 2x2 blocks coupling (e, nu) with
// (g, nu - 2 omega_r): column norms and column overlap. 2 omega_r must be a
// whole number of grid steps (InvalidGrid otherwise).
double column_unitarity_defect(const PropagatorElements& u);

// Interaction picture -> laboratory frame (external evolution S and internal
// phases exp(-i eps tau)). Potential `none` or `linear` (kappa from params).
SpinorState lab_frame_restore(const SpinorState& state, const SimulationParams& params, double tau,
                              PotentialKind potential);

// Inverse of lab_frame_restore.
SpinorState interaction_from_lab(const SpinorState& state, const SimulationParams& params,
                                 double tau, PotentialKind potential);

}  // namespace rabi
