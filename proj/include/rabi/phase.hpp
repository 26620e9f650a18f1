#pragma once

// Driving-field phase phi(tau) = phi0 + rate tau + chirp tau^2 + delta_phi(tau).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rabi/core.hpp"
#include "rabi/potential.hpp"

namespace rabi {

struct NoiseParams {
  double s = 0.0;  // <d phi_t d phi_t'> = s delta(t - t')
  std::uint64_t seed = 0;
  double d_tau = 1e-2;

  void validate() const;
};

// Sampled Wiener-type phase path, delta_phi[k] at tau = k * d_tau.
struct NoisePath {
  double d_tau = 0.0;
  std::vector<double> delta_phi;
  double s = 0.0;
  std::uint64_t seed = 0;

  double tau_end() const {
    return delta_phi.empty() ? 0.0 : d_tau * static_cast<double>(delta_phi.size() - 1);
  }
};

struct PhaseFunction {
  double phi0 = 0.0;
  double rate = 0.0;
  double chirp = 0.0;
  std::optional<NoisePath> noise;

  static PhaseFunction constant_rate(double rate, double phi0 = 0.0) {
    PhaseFunction p;
    p.phi0 = phi0;
    p.rate = rate;
    return p;
  }
};

struct PhaseValue {
  double phi;
  double dphi_dtau;
};

// With noise, the derivative is the increment of the enclosing sample
// interval divided by d_tau (right-continuous at sample points).
PhaseValue phase_eval(const PhaseFunction& pf, double tau);

// Chirp that holds the ground momentum nu0 (and the excited momentum
// nu0 + 2 omega_r) on resonance in the linear potential for all tau.
PhaseFunction chirp_for_linear(const SimulationParams& params, double nu0, double phi0 = 0.0);

// Second phase derivative required to keep the mean detuning fixed:
// d^2 phi / d tau^2 = <dV/dzeta>. Position-dependent gradients are averaged
// over the state's position distribution, so pass a lab-frame state (or any
// state at tau = 0).
double chirp_condition_rhs(const SpinorState& state, const PotentialSpec& potential,
                           const SimulationParams& params);

NoisePath sample_phase_noise(const NoiseParams& np, double tau_end);

// Sample variance of delta_phi(tau) over `paths` seeds (base.seed,
// base.seed + 1, ...) about the known zero mean, the target s * tau and the
// null-hypothesis standard error s * tau * sqrt(2 / paths).
struct NoiseVarianceEstimate {
  double variance = 0.0;
  double standard_error = 0.0;
  double expected = 0.0;
  // |variance - expected| in standard errors.
  double z_score() const;
};
NoiseVarianceEstimate estimate_increment_variance(const NoiseParams& base, double tau,
                                                  std::size_t paths);

// Two columns: tau, delta_phi.
void write_noise_csv(std::ostream& os, const NoisePath& path);

}  // namespace rabi
