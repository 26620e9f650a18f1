#include "rabi/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "rabi/spectral.hpp"
#include "rabi/specfun.hpp"

namespace rabi {

namespace {

constexpr cplx kI(0.0, 1.0);

PropagatorElements make_elements(const MomentumGrid& grid, double tau, double omega_r) {
  PropagatorElements u;
  u.grid = grid;
  u.tau = tau;
  u.omega_r = omega_r;
  const std::size_t n = grid.size();
  u.u_ee.resize(n);
  u.u_eg.resize(n);
  u.u_ge.resize(n);
  u.u_gg.resize(n);
  return u;
}

void store(PropagatorElements& u, std::size_t j, const ElementSet& e) {
  u.u_ee[j] = e.ee;
  u.u_eg[j] = e.eg;
  u.u_ge[j] = e.ge;
  u.u_gg[j] = e.gg;
}

// Elements for a segment of constant phase rate `rate` starting at tau0 with
// phase phi_start, evaluated a time t later.
template <class F>
PropagatorElements segment_elements(const MomentumGrid& grid, double omega_r, double rate,
                                    double phi_start, double tau0, double t, Exec exec, F&& at) {
  PropagatorElements u = make_elements(grid, t, omega_r);
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::ptrdiff_t jj = 0; jj < n; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    const double nu = grid.nu(j);
    const double dp = detuning(DetuningBranch::plus, nu, rate, omega_r);
    const double dm = detuning(DetuningBranch::minus, nu, rate, omega_r);
    // Interaction-picture coupling phase at the segment start: phi + (nu - omega_r) tau
    // at the excited momentum.
    const double th_eg = phi_start + (nu - omega_r) * tau0;
    const double th_ge = -(phi_start + (nu + omega_r) * tau0);
    store(u, j, at(dp, dm, t, th_eg, th_ge));
  }
  return u;
}

// Runs body(j) over the grid, collecting the first exception (by index) and
// rethrowing it outside the parallel region.
template <class F>
void guarded_grid_loop(std::size_t n, Exec exec, F&& body) {
  std::exception_ptr first;
  std::ptrdiff_t first_j = -1;
  const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::parallel)
  for (std::ptrdiff_t jj = 0; jj < nn; ++jj) {
    try {
      body(static_cast<std::size_t>(jj));
    } catch (...) {
#pragma omp critical(rabi_grid_error)
      if (first_j < 0 || jj < first_j) {
        first_j = jj;
        first = std::current_exception();
      }
    }
  }
  if (first) std::rethrow_exception(first);
}

struct Fundamental {
  cplx y1, dy1, y2, dy2;
};

// Even/odd pair in the detuning s for u'' + (2 i s / c) u' + u / c^2 = 0 (s-derivatives).
Fundamental kummer_pair(double s, double c) {
  const cplx alpha = -kI / (4.0 * c);
  const cplx z = -kI * s * s / c;
  const cplx dz = -2.0 * kI * s / c;
  const KummerPair p1 = kummer_1f1_with_deriv(alpha, 0.5, z);
  const KummerPair p2 = kummer_1f1_with_deriv(alpha + 0.5, 1.5, z);
  return {p1.value, dz * p1.deriv, s * p2.value, p2.value + s * dz * p2.deriv};
}

// H_lambda(+-q s) with q = 1/sqrt(i c) on the principal branch, lambda = i / (2c).
Fundamental hermite_pair(double s, double c) {
  const cplx q = 1.0 / std::sqrt(kI * c);
  const cplx lambda = kI / (2.0 * c);
  const cplx x = q * s;
  const cplx h1 = hermite_h(lambda, x).value;
  const cplx h1m = hermite_h(lambda - 1.0, x).value;
  const cplx h2 = hermite_h(lambda, -x).value;
  const cplx h2m = hermite_h(lambda - 1.0, -x).value;
  return {h1, 2.0 * lambda * q * h1m, h2, -2.0 * lambda * q * h2m};
}

}  // namespace

ElementSet free_elements_at(double dp, double dm, double t, double th_eg, double th_ge) {
  const double mp = effective_rabi(dp), mm = effective_rabi(dm);
  const cplx ep = std::polar(1.0, -dp * t), em = std::polar(1.0, -dm * t);
  const double sp = std::sin(mp * t) / mp, sm = std::sin(mm * t) / mm;
  ElementSet e;
  e.ee = ep * cplx(std::cos(mp * t), dp * sp);
  e.gg = em * cplx(std::cos(mm * t), dm * sm);
  e.eg = -kI * ep * sp * std::polar(1.0, th_eg);
  e.ge = -kI * em * sm * std::polar(1.0, th_ge);
  return e;
}

ElementSet free_element_derivatives_at(double dp, double dm, double t, double th_eg, double th_ge) {
  const double mp = effective_rabi(dp), mm = effective_rabi(dm);
  const cplx ep = std::polar(1.0, -dp * t), em = std::polar(1.0, -dm * t);
  const double sp = std::sin(mp * t) / mp, sm = std::sin(mm * t) / mm;
  ElementSet e;
  e.ee = -ep * sp;
  e.gg = -em * sm;
  e.eg = -kI * ep * cplx(std::cos(mp * t), -dp * sp) * std::polar(1.0, th_eg);
  e.ge = -kI * em * cplx(std::cos(mm * t), -dm * sm) * std::polar(1.0, th_ge);
  return e;
}

PropagatorElements free_propagator_elements(const MomentumGrid& grid, const SimulationParams& params,
                                            double tau, double phi0, Exec exec) {
  return segment_elements(grid, params.omega_r, params.delta_omega, phi0, 0.0, tau, exec,
                          free_elements_at);
}

PropagatorElements free_derivative_elements(const MomentumGrid& grid,
                                            const SimulationParams& params, double tau,
                                            double phi0, Exec exec) {
  return segment_elements(grid, params.omega_r, params.delta_omega, phi0, 0.0, tau, exec,
                          free_element_derivatives_at);
}

SpinorState apply_elements(const PropagatorElements& u, const SpinorState& state) {
  if (!(u.grid == state.grid)) throw InvalidParameter("elements and state live on different grids");
  if (state.frame != Frame::interaction)
    throw InvalidParameter("propagator elements act on interaction-picture states");
  const MomentumGrid& g = state.grid;
  const std::vector<cplx> g_in = momentum_shift(g, state.psi_g, 2.0 * u.omega_r);
  const std::vector<cplx> e_in = momentum_shift(g, state.psi_e, -2.0 * u.omega_r);
  SpinorState out(g, Frame::interaction, state.tau + u.tau);
  for (std::size_t j = 0; j < g.size(); ++j) {
    out.psi_e[j] = u.u_ee[j] * state.psi_e[j] + u.u_eg[j] * g_in[j];
    out.psi_g[j] = u.u_gg[j] * state.psi_g[j] + u.u_ge[j] * e_in[j];
  }
  return out;
}

SpinorState apply_free_propagator(const SpinorState& state, const SimulationParams& params,
                                  double tau, double phi0) {
  if (tau < 0.0) throw InvalidParameter("propagation time must be >= 0");
  const double t0 = state.tau;
  const auto u = segment_elements(state.grid, params.omega_r, params.delta_omega,
                                  phi0 + params.delta_omega * t0, t0, tau, Exec::serial,
                                  free_elements_at);
  return apply_elements(u, state);
}

SpinorState propagate_free_phase(const SpinorState& state, const SimulationParams& params,
                                 const PhaseFunction& phase, double tau_end, Exec exec) {
  if (phase.chirp != 0.0)
    throw InvalidParameter("free segments need a piecewise-constant phase rate (chirp = 0)");
  if (tau_end < state.tau) throw InvalidParameter("tau_end precedes the state time");
  std::vector<double> cuts{state.tau};
  if (phase.noise) {
    const double h = phase.noise->d_tau;
    for (auto k = static_cast<std::size_t>(std::floor(state.tau / h)) + 1;
         static_cast<double>(k) * h < tau_end; ++k)
      if (static_cast<double>(k) * h > state.tau) cuts.push_back(static_cast<double>(k) * h);
  }
  cuts.push_back(tau_end);
  SpinorState s = state;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (b <= a) continue;
    const double rate = phase_eval(phase, 0.5 * (a + b)).dphi_dtau;
    const double phi_a = phase_eval(phase, a).phi;
    const auto u = segment_elements(s.grid, params.omega_r, rate, phi_a, a, b - a, exec,
                                    free_elements_at);
    s = apply_elements(u, s);
    s.tau = b;
  }
  return s;
}

double linear_drift(DetuningBranch branch, double kappa, double chirp) {
  return sigma_z(branch) * (kappa - chirp);
}

LinearBlocks linear_blocks(double s0, double c, double tau, LinearBasis basis) {
  if (c == 0.0) throw InvalidParameter("linear blocks need a non-zero drift");
  const double s1 = s0 + c * tau;
  Fundamental f0, f1;
  cplx w0;
  if (basis == LinearBasis::kummer) {
    f0 = kummer_pair(s0, c);
    f1 = kummer_pair(s1, c);
    w0 = std::exp(-kI * s0 * s0 / c);
  } else {
    f0 = hermite_pair(s0, c);
    f1 = hermite_pair(s1, c);
    w0 = f0.y1 * f0.dy2 - f0.dy1 * f0.y2;
  }
  LinearBlocks b;
  b.A = f0.y2 * f1.y1 - f0.y1 * f1.y2;
  b.C = f0.dy2 * f1.y1 - f0.dy1 * f1.y2;
  b.G = w0;
  b.B = -kI * c * w0;
  b.dA = f0.y2 * f1.dy1 - f0.y1 * f1.dy2;
  b.dC = f0.dy2 * f1.dy1 - f0.dy1 * f1.dy2;
  return b;
}

namespace {

PropagatorElements linear_elements_impl(const MomentumGrid& grid, const SimulationParams& params,
                                        double tau, const PhaseFunction& phase, Exec exec,
                                        bool derivative) {
  if (phase.noise) throw InvalidParameter("linear propagator takes a deterministic phase");
  if (tau < 0.0) throw InvalidParameter("propagation time must be >= 0");
  const double c = params.kappa - phase.chirp;
  if (std::abs(c) < kKappaMin) {
    // Averaged drift over [0, tau] folded into the constant rate.
    SimulationParams p = params;
    p.delta_omega = phase.rate - c * tau;
    return derivative ? free_derivative_elements(grid, p, tau, phase.phi0, exec)
                      : free_propagator_elements(grid, p, tau, phase.phi0, exec);
  }
  PropagatorElements u = make_elements(grid, tau, params.omega_r);
  const cplx ph_eg = std::polar(1.0, phase.phi0), ph_ge = std::polar(1.0, -phase.phi0);
  guarded_grid_loop(grid.size(), exec, [&](std::size_t j) {
    const double nu = grid.nu(j);
    const double dp = detuning(DetuningBranch::plus, nu, phase.rate, params.omega_r);
    const double dm = detuning(DetuningBranch::minus, nu, phase.rate, params.omega_r);
    try {
      const LinearBlocks bp = linear_blocks(dp, c, tau);
      const LinearBlocks bm = linear_blocks(dm, -c, tau);
      if (derivative) {
        u.u_ee[j] = c * bp.dC / bp.G;
        u.u_eg[j] = ph_eg * c * bp.dA / bp.B;
        u.u_gg[j] = -c * bm.dC / bm.G;
        u.u_ge[j] = ph_ge * -c * bm.dA / bm.B;
      } else {
        u.u_ee[j] = bp.C / bp.G;
        u.u_eg[j] = ph_eg * bp.A / bp.B;
        u.u_gg[j] = bm.C / bm.G;
        u.u_ge[j] = ph_ge * bm.A / bm.B;
      }
    } catch (const AccuracyError& e) {
      throw AccuracyError(std::string(e.what()) + " at grid point " + std::to_string(j) +
                              " (nu = " + std::to_string(nu) + ")",
                          e.partial_value(), e.est_error());
    }
  });
  return u;
}

}  // namespace

PropagatorElements linear_propagator_elements(const MomentumGrid& grid,
                                              const SimulationParams& params, double tau,
                                              const PhaseFunction& phase, Exec exec) {
  return linear_elements_impl(grid, params, tau, phase, exec, false);
}

PropagatorElements linear_propagator_elements(const MomentumGrid& grid,
                                              const SimulationParams& params, double tau,
                                              Exec exec) {
  return linear_elements_impl(grid, params, tau, PhaseFunction::constant_rate(params.delta_omega),
                              exec, false);
}

PropagatorElements linear_derivative_elements(const MomentumGrid& grid,
                                              const SimulationParams& params, double tau,
                                              const PhaseFunction& phase, Exec exec) {
  return linear_elements_impl(grid, params, tau, phase, exec, true);
}

namespace {

void internal_phases(SpinorState& s, const SimulationParams& params, double tau, double sign) {
  const cplx pe = std::polar(1.0, -sign * params.eps_e * tau);
  const cplx pg = std::polar(1.0, -sign * params.eps_g * tau);
  for (auto& v : s.psi_e) v *= pe;
  for (auto& v : s.psi_g) v *= pg;
}

// Multiplies both components by exp(-i sign tau (nu - kappa tau)^2 / (4 omega_r)).
void kinetic_phase(SpinorState& s, const SimulationParams& params, double kappa, double tau,
                   double sign) {
  for (std::size_t j = 0; j < s.grid.size(); ++j) {
    const double q = s.grid.nu(j) - kappa * tau;
    const cplx f = std::polar(1.0, -sign * tau * q * q / (4.0 * params.omega_r));
    s.psi_e[j] *= f;
    s.psi_g[j] *= f;
  }
}

void check_potential(PotentialKind k) {
  if (k != PotentialKind::none && k != PotentialKind::linear)
    throw InvalidParameter("closed-form frame change exists only for none and linear potentials");
}

}  // namespace

SpinorState lab_frame_restore(const SpinorState& state, const SimulationParams& params, double tau,
                              PotentialKind potential) {
  check_potential(potential);
  if (state.frame != Frame::interaction) throw InvalidParameter("state is not in the interaction picture");
  SpinorState s = state;
  const double kappa = potential == PotentialKind::linear ? params.kappa : 0.0;
  kinetic_phase(s, params, kappa, tau, 1.0);
  if (kappa != 0.0) {
    // exp(-2 i kappa tau zeta): psi(nu) -> psi(nu + 2 kappa tau)
    s.psi_e = momentum_shift(s.grid, s.psi_e, -2.0 * kappa * tau);
    s.psi_g = momentum_shift(s.grid, s.psi_g, -2.0 * kappa * tau);
    const cplx cubic = std::polar(1.0, -kappa * kappa * tau * tau * tau / (12.0 * params.omega_r));
    for (auto& v : s.psi_e) v *= cubic;
    for (auto& v : s.psi_g) v *= cubic;
  }
  internal_phases(s, params, tau, 1.0);
  s.frame = Frame::lab;
  s.tau = tau;
  return s;
}

SpinorState interaction_from_lab(const SpinorState& state, const SimulationParams& params,
                                 double tau, PotentialKind potential) {
  check_potential(potential);
  if (state.frame != Frame::lab) throw InvalidParameter("state is not in the lab frame");
  SpinorState s = state;
  internal_phases(s, params, tau, -1.0);
  const double kappa = potential == PotentialKind::linear ? params.kappa : 0.0;
  if (kappa != 0.0) {
    const cplx cubic = std::polar(1.0, kappa * kappa * tau * tau * tau / (12.0 * params.omega_r));
    for (auto& v : s.psi_e) v *= cubic;
    for (auto& v : s.psi_g) v *= cubic;
    s.psi_e = momentum_shift(s.grid, s.psi_e, 2.0 * kappa * tau);
    s.psi_g = momentum_shift(s.grid, s.psi_g, 2.0 * kappa * tau);
  }
  kinetic_phase(s, params, kappa, tau, -1.0);
  s.frame = Frame::interaction;
  s.tau = tau;
  return s;
}

double column_unitarity_defect(const PropagatorElements& u) {
  const double bins = 2.0 * u.omega_r / u.grid.d_nu();
  const double r = std::round(bins);
  if (std::abs(bins - r) > 1e-9) throw InvalidGrid("2 omega_r is not a whole number of grid steps");
  const auto s = static_cast<std::size_t>(r);
  const std::size_t n = u.grid.size();
  double worst = 0.0;
  // Block {e at nu_j, g at nu_j - 2 omega_r = nu_{j-s}}.
  for (std::size_t j = s; j < n; ++j) {
    const std::size_t i = j - s;
    const cplx ee = u.u_ee[j], eg = u.u_eg[j], ge = u.u_ge[i], gg = u.u_gg[i];
    worst = std::max({worst, std::abs(std::norm(ee) + std::norm(ge) - 1.0),
                      std::abs(std::norm(eg) + std::norm(gg) - 1.0),
                      std::abs(std::conj(ee) * eg + std::conj(ge) * gg)});
  }
  return worst;
}

}  // namespace rabi
