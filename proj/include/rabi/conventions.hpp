#pragma once

// Sign and placement conventions used by every solver. Each entry was fixed by
// agreement with the split-step integrator and is pinned by a regression test.
// The table is echoed into every run manifest.

#include <array>
#include <string_view>

namespace rabi {

struct Convention {
  std::string_view name;
  std::string_view rule;
};

inline constexpr std::array<Convention, 11> kConventions{{
    {"commutator", "[zeta, nu] = i; zeta = i d/dnu; exp(i a zeta) psi(nu) = psi(nu - a)"},
    {"detuning", "delta_+ = (-dphi - nu + omega_r)/2 (excited row), delta_- = (dphi + nu + omega_r)/2 (ground row)"},
    {"displacement", "D = exp(i(2 omega_r zeta + phi)) maps ground at nu to excited at nu + 2 omega_r"},
    {"elements", "u_eg(nu) multiplies psi_g(nu - 2 omega_r) and carries exp(+i phi0); u_ge(nu) multiplies psi_e(nu + 2 omega_r) and carries exp(-i phi0)"},
    {"free_elements", "u_ll = exp(-i delta t)(cos mu t + i delta sin(mu t)/mu); u_lj = -i exp(-i delta t) sin(mu t)/mu"},
    {"linear_potential", "V = 2 kappa zeta with kappa = k a / (2 m Omega^2); nu_S = nu - 2 kappa tau"},
    {"linear_drift", "delta_+,S = delta_+ + (kappa - c) tau, delta_-,S = delta_- - (kappa - c) tau for phase chirp c tau^2"},
    {"chirp", "chirp_for_linear: phi = phi0 - (nu0 + omega_r) tau + kappa tau^2; d2phi/dtau2 = <dV/dzeta>"},
    {"quadratic_heisenberg", "V = epsilon zeta^2, w = sqrt(epsilon/omega_r), nu_S = cos(w tau) nu - (2 epsilon / w) sin(w tau) zeta"},
    {"perturbation", "delta_+-,S = delta_+- -+ sum_k epsilon^k (g_k nu + h_k zeta)/2; source -2i sum (-+delta^(k-l)) psi^(l)'"},
    {"greens_kernel", "G(t) = theta(t) exp(-i delta t) sin(mu t) / mu"},
}};

}  // namespace rabi
