#pragma once

// Displacement algebra of the coupling operator D = exp(i(2 omega_r zeta + phi))
// and the resonant momenta of the two detuning branches.

#include <array>
#include <string_view>
#include <utility>

#include "rabi/core.hpp"

namespace rabi {

struct DisplacementAlgebraReport {
  static constexpr std::array<std::string_view, 4> kNames = {
      "D^+ nu D = nu + 2 omega_r", "D nu D^+ = nu - 2 omega_r",
      "D^+ delta_+ D = -delta_-", "D delta_- D^+ = -delta_+"};
  // Max absolute deviation per identity, scaled by max |psi| of the probe.
  std::array<double, 4> deviation{};
  // Whether the displacement was a whole number of grid steps.
  bool integer_shift = false;

  double max_deviation() const;
  bool passed(double tol = 1e-14) const { return max_deviation() <= tol; }
};

// Conjugates the diagonal operators nu and delta_+- with D on the grid
// (momentum_shift by -+ 2 omega_r together with the phase exp(+-i phi)) and
// compares with the affine right-hand sides, applied to a localized probe
// packet in the middle of the grid. phi = 0.37 is an arbitrary fixed drive
// phase; it cancels in every identity.
DisplacementAlgebraReport check_displacement_algebra(const MomentumGrid& grid,
                                                     const SimulationParams& params);

// (nu_minus, nu_plus) with delta_-(nu_minus) = delta_+(nu_plus) = 0 at rate
// params.delta_omega. nu_plus is formed as nu_minus + 2 omega_r.
std::pair<double, double> resonant_pair(const SimulationParams& params);

}  // namespace rabi
