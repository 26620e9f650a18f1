#pragma once

// Dimensionless parameters, the momentum grid, spinor states and the scalar
// detuning algebra shared by every solver.
//
// Units: time tau = t * Omega, momentum nu = k p / (m Omega), position
// zeta = k z / (2 omega_r), so that [zeta, nu] = i. In the momentum
// representation zeta = i d/dnu and exp(i a zeta) shifts f(nu) -> f(nu - a).

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "rabi/errors.hpp"

namespace rabi {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHbar = 1.054571817e-34;  // J s

// Execution policy for grid kernels. `serial` is the reference path used
// by tests and by `--deterministic`; both paths give bit-identical output.
enum class Exec { serial, parallel };

struct SimulationParams {
  double omega_r = 1.0;      // recoil frequency / Omega
  double delta_omega = 0.0;  // constant d(phi)/d(tau)
  double kappa = 0.0;        // linear potential V = 2 kappa zeta
  double epsilon = 0.0;      // quadratic potential V = epsilon zeta^2
  double eps_e = 0.0;        // internal energies / Omega (lab-frame restore only)
  double eps_g = 0.0;

  void validate() const;
};

// Laboratory (SI) description of the same system.
struct LabParams {
  double mass = 0.0;                // kg
  double wavenumber = 0.0;          // effective k, 1/m
  double rabi_frequency = 0.0;      // Omega, rad/s
  double force = 0.0;               // a in Q = a z, N
  double laser_frequency = 0.0;     // omega_L, rad/s
  double eps_e = 0.0;               // internal level energies, rad/s
  double eps_g = 0.0;
  double laser_phase_rate = 0.0;    // d(phi_L)/dt, rad/s
  double laser_phase0 = 0.0;        // phi_L(0), rad

  void validate() const;
};

SimulationParams to_dimensionless(const LabParams& lab);

// phi(0) of the dimensionless driving phase, i.e. -phi_L(0).
double initial_phase(const LabParams& lab);

// Uniform periodic momentum axis nu_j = nu_min + j d_nu, j = 0..n-1. The
// Fourier-dual position axis has spacing 2 pi / (n d_nu) and uses the usual
// centred FFT ordering.
class MomentumGrid {
 public:
  MomentumGrid() = default;
  // n samples covering [nu_min, nu_max); n must be a power of two >= 2.
  MomentumGrid(std::size_t n, double nu_min, double nu_max);

  std::size_t size() const { return n_; }
  double nu_min() const { return nu_min_; }
  double nu_max() const { return nu_min_ + static_cast<double>(n_) * d_nu_; }
  double d_nu() const { return d_nu_; }
  double d_zeta() const { return 2.0 * kPi / (static_cast<double>(n_) * d_nu_); }

  double nu(std::size_t j) const { return nu_min_ + static_cast<double>(j) * d_nu_; }
  // Position of FFT bin k (centred: bins >= n/2 are negative).
  double zeta(std::size_t k) const;

  std::vector<double> nu_axis() const;
  std::vector<double> zeta_axis() const;

  bool operator==(const MomentumGrid& o) const {
    return n_ == o.n_ && nu_min_ == o.nu_min_ && d_nu_ == o.d_nu_;
  }

 private:
  std::size_t n_ = 0;
  double nu_min_ = 0.0;
  double d_nu_ = 0.0;
};

// Default grid: 1024 points on [-8, 8).
MomentumGrid default_grid();

// plus <-> excited row (sigma_z = +1), minus <-> ground row (sigma_z = -1).
enum class DetuningBranch { plus, minus };

constexpr double sigma_z(DetuningBranch b) { return b == DetuningBranch::plus ? 1.0 : -1.0; }

enum class Frame { interaction, lab };

struct SpinorState {
  MomentumGrid grid;
  std::vector<cplx> psi_e;
  std::vector<cplx> psi_g;
  Frame frame = Frame::interaction;
  double tau = 0.0;

  SpinorState() = default;
  SpinorState(const MomentumGrid& g, Frame f, double t)
      : grid(g), psi_e(g.size()), psi_g(g.size()), frame(f), tau(t) {}

  // d_nu * sum(|psi_e|^2 + |psi_g|^2)
  double norm_squared() const;
  double population_e() const;
  double population_g() const;
};

enum class Level { excited, ground };

// Normalized Gaussian packet |psi(nu)|^2 ~ exp(-(nu - center)^2 / (2 sigma^2))
// in one internal level, renormalized on the discrete grid.
SpinorState gaussian_state(const MomentumGrid& grid, double center, double sigma, Level level,
                           Frame frame = Frame::interaction);

// How the momentum displacement is folded into the off-diagonal elements.
// `input_shift`: (U psi)_e(nu) = u_ee(nu) psi_e(nu) + u_eg(nu) psi_g(nu - 2 omega_r),
//               (U psi)_g(nu) = u_gg(nu) psi_g(nu) + u_ge(nu) psi_e(nu + 2 omega_r),
// with the drive phase exp(+-i phi(0)) included in u_eg / u_ge.
enum class DisplacementConvention { input_shift };

// The four 2x2 matrix elements of the interaction-picture propagator,
// sampled on a grid.
struct PropagatorElements {
  MomentumGrid grid;
  double tau = 0.0;
  double omega_r = 0.0;
  DisplacementConvention convention = DisplacementConvention::input_shift;
  std::vector<cplx> u_ee, u_eg, u_ge, u_gg;
};

// One point of the element field.
struct ElementSet {
  cplx ee, eg, ge, gg;
};

// delta_+- = (-+ dphi/dtau -+ nu + omega_r) / 2
double detuning(DetuningBranch branch, double nu, double dphi_dtau, double omega_r);

// Heisenberg detuning in a linear potential: the momentum label nu drifts to
// nu - 2 kappa tau.
double detuning_time_dependent(DetuningBranch branch, double nu, double tau,
                               const SimulationParams& params);

// mu = sqrt(1 + delta^2)
double effective_rabi(double delta);

// Momentum in the kernel of the chosen detuning branch.
double resonant_momentum(DetuningBranch branch, double delta_omega, double omega_r);

// d_nu * sum |a|^2
double l2_norm_squared(std::span<const cplx> a, double d_nu);

}  // namespace rabi
