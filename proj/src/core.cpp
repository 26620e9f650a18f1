#include "rabi/core.hpp"

#include <cmath>
#include <string>

namespace rabi {

void SimulationParams::validate() const {
  if (!(omega_r > 0.0) || !std::isfinite(omega_r))
    throw InvalidParameter("omega_r must be positive and finite");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw InvalidParameter("epsilon must be non-negative and finite");
  if (!std::isfinite(delta_omega) || !std::isfinite(kappa) || !std::isfinite(eps_e) ||
      !std::isfinite(eps_g))
    throw InvalidParameter("non-finite simulation parameter");
}

void LabParams::validate() const {
  if (!(mass > 0.0)) throw InvalidParameter("mass must be positive");
  if (!(rabi_frequency > 0.0)) throw InvalidParameter("rabi_frequency must be positive");
  if (wavenumber == 0.0 || !std::isfinite(wavenumber))
    throw InvalidParameter("wavenumber must be non-zero and finite");
}

SimulationParams to_dimensionless(const LabParams& lab) {
  lab.validate();
  const double k = lab.wavenumber;
  const double om = lab.rabi_frequency;
  SimulationParams p;
  p.omega_r = kHbar * k * k / (2.0 * lab.mass * om);
  // V(zeta) = a z / (hbar Omega) with z = 2 omega_r zeta / k gives V = 2 kappa zeta.
  p.kappa = k * lab.force / (2.0 * lab.mass * om * om);
  p.delta_omega = (lab.eps_e - lab.eps_g - lab.laser_frequency - lab.laser_phase_rate) / om;
  p.eps_e = lab.eps_e / om;
  p.eps_g = lab.eps_g / om;
  p.epsilon = 0.0;
  return p;
}

double initial_phase(const LabParams& lab) { return -lab.laser_phase0; }

MomentumGrid::MomentumGrid(std::size_t n, double nu_min, double nu_max) : n_(n), nu_min_(nu_min) {
  if (n < 2 || (n & (n - 1)) != 0)
    throw InvalidGrid("grid size must be a power of two >= 2, got " + std::to_string(n));
  if (!(nu_max > nu_min) || !std::isfinite(nu_min) || !std::isfinite(nu_max))
    throw InvalidGrid("grid range must satisfy nu_min < nu_max");
  d_nu_ = (nu_max - nu_min) / static_cast<double>(n);
}

double MomentumGrid::zeta(std::size_t k) const {
  const auto n = static_cast<std::ptrdiff_t>(n_);
  auto kk = static_cast<std::ptrdiff_t>(k);
  if (kk >= n / 2) kk -= n;
  return static_cast<double>(kk) * d_zeta();
}

std::vector<double> MomentumGrid::nu_axis() const {
  std::vector<double> v(n_);
  for (std::size_t j = 0; j < n_; ++j) v[j] = nu(j);
  return v;
}

std::vector<double> MomentumGrid::zeta_axis() const {
  std::vector<double> v(n_);
  for (std::size_t k = 0; k < n_; ++k) v[k] = zeta(k);
  return v;
}

MomentumGrid default_grid() { return MomentumGrid(1024, -8.0, 8.0); }

double l2_norm_squared(std::span<const cplx> a, double d_nu) {
  double s = 0.0;
  for (const auto& x : a) s += std::norm(x);
  return s * d_nu;
}

double SpinorState::population_e() const { return l2_norm_squared(psi_e, grid.d_nu()); }
double SpinorState::population_g() const { return l2_norm_squared(psi_g, grid.d_nu()); }
double SpinorState::norm_squared() const { return population_e() + population_g(); }

SpinorState gaussian_state(const MomentumGrid& grid, double center, double sigma, Level level,
                           Frame frame) {
  if (!(sigma > 0.0)) throw InvalidParameter("gaussian width must be positive");
  SpinorState s(grid, frame, 0.0);
  auto& psi = level == Level::excited ? s.psi_e : s.psi_g;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = (grid.nu(j) - center) / sigma;
    psi[j] = std::exp(-0.25 * x * x);
  }
  const double nrm = std::sqrt(l2_norm_squared(psi, grid.d_nu()));
  for (auto& v : psi) v /= nrm;
  return s;
}

double detuning(DetuningBranch branch, double nu, double dphi_dtau, double omega_r) {
  const double s = sigma_z(branch);
  return 0.5 * (-s * dphi_dtau - s * nu + omega_r);
}

double detuning_time_dependent(DetuningBranch branch, double nu, double tau,
                               const SimulationParams& params) {
  return detuning(branch, nu - 2.0 * params.kappa * tau, params.delta_omega, params.omega_r);
}

double effective_rabi(double delta) { return std::hypot(1.0, delta); }

double resonant_momentum(DetuningBranch branch, double delta_omega, double omega_r) {
  return branch == DetuningBranch::plus ? omega_r - delta_omega : -delta_omega - omega_r;
}

}  // namespace rabi
