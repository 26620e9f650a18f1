#include "rabi/phase.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <string>

#include "rabi/spectral.hpp"

namespace rabi {

void NoiseParams::validate() const {
  if (!(s >= 0.0) || !std::isfinite(s)) throw InvalidParameter("noise s must be finite and >= 0");
  if (!(d_tau > 0.0)) throw InvalidParameter("noise d_tau must be positive");
}

PhaseValue phase_eval(const PhaseFunction& pf, double tau) {
  PhaseValue v{pf.phi0 + pf.rate * tau + pf.chirp * tau * tau, pf.rate + 2.0 * pf.chirp * tau};
  if (!pf.noise) return v;
  const NoisePath& np = *pf.noise;
  const double end = np.tau_end();
  const double slack = 1e-9 * np.d_tau;
  if (np.delta_phi.size() < 2 || tau < -slack || tau > end + slack)
    throw CoverageError("phase noise path covers [0, " + std::to_string(end) +
                        "], evaluated at " + std::to_string(tau));
  const std::size_t last = np.delta_phi.size() - 1;
  const double x = std::clamp(tau / np.d_tau, 0.0, static_cast<double>(last));
  std::size_t k = static_cast<std::size_t>(std::floor(x));
  if (k >= last) k = last - 1;
  const double f = x - static_cast<double>(k);
  const double d0 = np.delta_phi[k], d1 = np.delta_phi[k + 1];
  v.phi += d0 + f * (d1 - d0);
  v.dphi_dtau += (d1 - d0) / np.d_tau;
  return v;
}

PhaseFunction chirp_for_linear(const SimulationParams& params, double nu0, double phi0) {
  // delta_-(nu0 - 2 kappa tau) with dphi = -(nu0 + omega_r) + 2 kappa tau stays 0.
  PhaseFunction p;
  p.phi0 = phi0;
  p.rate = -(nu0 + params.omega_r);
  p.chirp = params.kappa;
  return p;
}

double chirp_condition_rhs(const SpinorState& state, const PotentialSpec& potential,
                           const SimulationParams& /*params*/) {
  switch (potential.kind) {
    case PotentialKind::none: return 0.0;
    case PotentialKind::linear: return 2.0 * potential.kappa;
    default: break;
  }
  const MomentumGrid& g = state.grid;
  const std::vector<double> grad = potential.gradient(g);
  Spectral fft(g.size());
  std::vector<cplx> xe(g.size()), xg(g.size());
  fft.to_position(state.psi_e, xe);
  fft.to_position(state.psi_g, xg);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double w = std::norm(xe[k]) + std::norm(xg[k]);
    num += w * grad[k];
    den += w;
  }
  return den > 0.0 ? num / den : 0.0;
}

NoisePath sample_phase_noise(const NoiseParams& np, double tau_end) {
  np.validate();
  if (!(tau_end > 0.0)) throw InvalidParameter("noise tau_end must be positive");
  const auto steps = static_cast<std::size_t>(std::ceil(tau_end / np.d_tau - 1e-9));
  NoisePath path;
  path.d_tau = np.d_tau;
  path.s = np.s;
  path.seed = np.seed;
  path.delta_phi.assign(steps + 1, 0.0);
  if (np.s == 0.0) return path;
  std::mt19937_64 rng(np.seed);
  std::normal_distribution<double> inc(0.0, std::sqrt(np.s * np.d_tau));
  for (std::size_t k = 1; k <= steps; ++k) path.delta_phi[k] = path.delta_phi[k - 1] + inc(rng);
  return path;
}

void write_noise_csv(std::ostream& os, const NoisePath& path) {
  os << "tau,delta_phi\n";
  os.precision(17);
  for (std::size_t k = 0; k < path.delta_phi.size(); ++k)
    os << path.d_tau * static_cast<double>(k) << ',' << path.delta_phi[k] << '\n';
}

double NoiseVarianceEstimate::z_score() const {
  return standard_error > 0.0 ? std::abs(variance - expected) / standard_error
                              : (variance == expected ? 0.0 : INFINITY);
}

NoiseVarianceEstimate estimate_increment_variance(const NoiseParams& base, double tau,
                                                  std::size_t paths) {
  if (paths < 2) throw InvalidParameter("need at least two noise paths");
  NoiseParams np = base;
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < paths; ++i) {
    np.seed = base.seed + i;
    const NoisePath path = sample_phase_noise(np, tau);
    const double x = path.delta_phi.back();
    // Welford
    const double d = x - mean;
    mean += d / static_cast<double>(i + 1);
    m2 += d * (x - mean);
  }
  NoiseVarianceEstimate e;
  const auto n = static_cast<double>(paths);
  // The mean is known to be zero; estimate about it.
  e.variance = (m2 + n * mean * mean) / n;
  // Path ends on the first sample at or after tau.
  const auto steps = std::ceil(tau / base.d_tau - 1e-9);
  e.expected = base.s * base.d_tau * steps;
  // Under the Gaussian null the variance estimator about a known mean has
  // standard deviation expected * sqrt(2 / n).
  e.standard_error = e.expected * std::sqrt(2.0 / n);
  return e;
}

}  // namespace rabi
