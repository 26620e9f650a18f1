#include "rabi/oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rabi/analytic.hpp"
#include "rabi/spectral.hpp"

namespace rabi {

void OracleConfig::validate(const MomentumGrid& grid) const {
  if (!(d_tau > 0.0)) throw InvalidParameter("oracle d_tau must be positive");
  if (store_every < 1) throw InvalidParameter("oracle store_every must be >= 1");
  potential.validate(grid);
}

double default_oracle_step(const MomentumGrid& grid, const SimulationParams& params, double rate) {
  double mu_max = 1.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double nu = grid.nu(j);
    mu_max = std::max({mu_max, effective_rabi(detuning(DetuningBranch::plus, nu, rate, params.omega_r)),
                       effective_rabi(detuning(DetuningBranch::minus, nu, rate, params.omega_r))});
  }
  return 1e-3 * 2.0 * kPi / mu_max;
}

std::vector<cplx> external_evolve(const MomentumGrid& grid, std::span<const cplx> psi,
                                  const PotentialSpec& potential, double omega_r, double tau,
                                  double d_tau, int sign) {
  std::vector<cplx> out(psi.begin(), psi.end());
  if (tau == 0.0) return out;
  if (potential.kind == PotentialKind::linear)
    throw InvalidParameter("external_evolve handles periodic potentials only");
  const std::size_t n = grid.size();
  const auto steps = static_cast<std::size_t>(std::ceil(tau / d_tau - 1e-9));
  const double h = sign * tau / static_cast<double>(steps);
  const std::vector<double> v = potential.sample(grid);
  std::vector<cplx> kin(n), pot(n), x(n);
  for (std::size_t j = 0; j < n; ++j)
    kin[j] = std::polar(1.0, -0.5 * h * grid.nu(j) * grid.nu(j) / (4.0 * omega_r));
  for (std::size_t k = 0; k < n; ++k) pot[k] = std::polar(1.0, -h * v[k]);
  Spectral fft(n);
  for (std::size_t s = 0; s < steps; ++s) {
    for (std::size_t j = 0; j < n; ++j) out[j] *= kin[j];
    fft.to_position(out, x);
    for (std::size_t k = 0; k < n; ++k) x[k] *= pot[k];
    fft.to_momentum(x, out);
    for (std::size_t j = 0; j < n; ++j) out[j] *= kin[j];
  }
  return out;
}

namespace {

// Internal working variable:
//   periodic potentials: psi in the rotating frame (times exp(-i eps tau) in lab mode);
//   linear potential: chi = exp(2 i kappa tau zeta) psi, which removes V and
//   turns the kinetic energy into (nu - 2 kappa tau)^2 / (4 omega_r).
class Integrator {
 public:
  Integrator(const MomentumGrid& grid, const OracleConfig& cfg, const SimulationParams& params,
             bool lab_mode)
      : g_(grid), cfg_(cfg), p_(params), lab_(lab_mode), fft_(grid.size()),
        linear_(cfg.potential.kind == PotentialKind::linear), kappa_(cfg.potential.kappa) {
    const std::size_t n = g_.size();
    xe_.resize(n);
    xg_.resize(n);
    if (!linear_) v_ = cfg_.potential.sample(g_);
    else v_.assign(n, 0.0);
    zeta_ = g_.zeta_axis();
    eps_e_ = lab_ ? p_.eps_e : 0.0;
    eps_g_ = lab_ ? p_.eps_g : 0.0;
  }

  // Internal variable from a caller state at time tau.
  void load(const SpinorState& s) {
    e_ = s.psi_e;
    g_psi_ = s.psi_g;
    const double tau = s.tau;
    if (s.frame == Frame::interaction) {
      if (tau != 0.0 && !(cfg_.potential.kind == PotentialKind::none || linear_))
        throw InvalidParameter("oracle needs a lab-frame start state for this potential at tau != 0");
      if (linear_) {
        phase_both(e_, g_psi_, [&](std::size_t j) {
          const double q = g_.nu(j) - kappa_ * tau;
          return -tau * q * q / (4.0 * p_.omega_r) - kappa_ * kappa_ * tau * tau * tau / (12.0 * p_.omega_r);
        });
      } else {
        phase_both(e_, g_psi_, [&](std::size_t j) {
          return -tau * g_.nu(j) * g_.nu(j) / (4.0 * p_.omega_r);
        });
      }
      internal(tau, 1.0);
    } else if (linear_) {
      e_ = momentum_shift(g_, e_, 2.0 * kappa_ * tau);
      g_psi_ = momentum_shift(g_, g_psi_, 2.0 * kappa_ * tau);
    }
  }

  SpinorState output(double tau) const {
    SpinorState s(g_, cfg_.output_frame, tau);
    s.psi_e = e_;
    s.psi_g = g_psi_;
    if (cfg_.output_frame == Frame::interaction) {
      internal_on(s, tau, -1.0);
      if (linear_) {
        phase_both(s.psi_e, s.psi_g, [&](std::size_t j) {
          const double q = g_.nu(j) - kappa_ * tau;
          return tau * q * q / (4.0 * p_.omega_r) + kappa_ * kappa_ * tau * tau * tau / (12.0 * p_.omega_r);
        });
      } else if (cfg_.potential.kind == PotentialKind::none) {
        phase_both(s.psi_e, s.psi_g, [&](std::size_t j) {
          return tau * g_.nu(j) * g_.nu(j) / (4.0 * p_.omega_r);
        });
      } else {
        s.psi_e = external_evolve(g_, s.psi_e, cfg_.potential, p_.omega_r, tau, cfg_.d_tau, -1);
        s.psi_g = external_evolve(g_, s.psi_g, cfg_.potential, p_.omega_r, tau, cfg_.d_tau, -1);
      }
    } else if (linear_) {
      s.psi_e = momentum_shift(g_, s.psi_e, -2.0 * kappa_ * tau);
      s.psi_g = momentum_shift(g_, s.psi_g, -2.0 * kappa_ * tau);
    }
    return s;
  }

  void step(double tau, double h) {
    kinetic(tau, tau + 0.5 * h);
    coupling(tau + 0.5 * h, h);
    kinetic(tau + 0.5 * h, tau + h);
    const double edge = std::max(edge_amplitude(e_, cfg_.edge_width), edge_amplitude(g_psi_, cfg_.edge_width));
    if (edge > cfg_.edge_tolerance)
      throw AliasingError("oracle: amplitude " + std::to_string(edge) +
                          " at the momentum grid edge at tau = " + std::to_string(tau + h));
  }

 private:
  template <class F>
  void phase_both(std::vector<cplx>& a, std::vector<cplx>& b, F&& angle) const {
    for (std::size_t j = 0; j < g_.size(); ++j) {
      const cplx f = std::polar(1.0, angle(j));
      a[j] *= f;
      b[j] *= f;
    }
  }

  void internal(double tau, double sign) {
    if (!lab_) return;
    const cplx pe = std::polar(1.0, -sign * eps_e_ * tau), pg = std::polar(1.0, -sign * eps_g_ * tau);
    for (auto& v : e_) v *= pe;
    for (auto& v : g_psi_) v *= pg;
  }

  void internal_on(SpinorState& s, double tau, double sign) const {
    if (!lab_) return;
    const cplx pe = std::polar(1.0, -sign * eps_e_ * tau), pg = std::polar(1.0, -sign * eps_g_ * tau);
    for (auto& v : s.psi_e) v *= pe;
    for (auto& v : s.psi_g) v *= pg;
  }

  void kinetic(double ta, double tb) {
    const double h = tb - ta;
    const std::size_t n = g_.size();
    const double w = 1.0 / (4.0 * p_.omega_r);
    const cplx pe = std::polar(1.0, -eps_e_ * h), pg = std::polar(1.0, -eps_g_ * h);
    const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (cfg_.exec == Exec::parallel)
    for (std::ptrdiff_t jj = 0; jj < nn; ++jj) {
      const auto j = static_cast<std::size_t>(jj);
      double ang;
      if (linear_) {
        const double q = g_.nu(j) - kappa_ * (ta + tb);
        ang = -h * w * (q * q + kappa_ * kappa_ * h * h / 3.0);
      } else {
        ang = -h * w * g_.nu(j) * g_.nu(j);
      }
      const cplx f = std::polar(1.0, ang);
      e_[j] *= f * pe;
      g_psi_[j] *= f * pg;
    }
  }

  void coupling(double tmid, double h) {
    const std::size_t n = g_.size();
    fft_.to_position(e_, xe_);
    fft_.to_position(g_psi_, xg_);
    const double phi = phase_eval(cfg_.phase, tmid).phi + (eps_g_ - eps_e_) * tmid;
    const double c = std::cos(h), s = std::sin(h);
    const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (cfg_.exec == Exec::parallel)
    for (std::ptrdiff_t kk = 0; kk < nn; ++kk) {
      const auto k = static_cast<std::size_t>(kk);
      const cplx d = std::polar(1.0, 2.0 * p_.omega_r * zeta_[k] + phi);
      const cplx v = std::polar(1.0, -h * v_[k]);
      const cplx a = xe_[k], b = xg_[k];
      xe_[k] = v * (c * a - cplx(0.0, s) * d * b);
      xg_[k] = v * (c * b - cplx(0.0, s) * std::conj(d) * a);
    }
    fft_.to_momentum(xe_, e_);
    fft_.to_momentum(xg_, g_psi_);
  }

  const MomentumGrid& g_;
  const OracleConfig& cfg_;
  const SimulationParams& p_;
  bool lab_;
  Spectral fft_;
  bool linear_;
  double kappa_;
  double eps_e_ = 0.0, eps_g_ = 0.0;
  std::vector<double> v_, zeta_;
  std::vector<cplx> e_, g_psi_, xe_, xg_;
};

std::vector<SpinorState> evolve(const SpinorState& state0, const OracleConfig& cfg,
                                const SimulationParams& params, double tau_end, bool lab) {
  params.validate();
  cfg.validate(state0.grid);
  if (tau_end < state0.tau) throw InvalidParameter("tau_end precedes the start time");
  Integrator it(state0.grid, cfg, params, lab);
  it.load(state0);
  const double span = tau_end - state0.tau;
  const auto steps = static_cast<std::size_t>(std::ceil(span / cfg.d_tau - 1e-9));
  const double h = steps > 0 ? span / static_cast<double>(steps) : 0.0;
  std::vector<SpinorState> out;
  out.push_back(it.output(state0.tau));
  for (std::size_t s = 1; s <= steps; ++s) {
    const double t = state0.tau + static_cast<double>(s - 1) * h;
    it.step(t, h);
    if (s % static_cast<std::size_t>(cfg.store_every) == 0 || s == steps)
      out.push_back(it.output(s == steps ? tau_end : state0.tau + static_cast<double>(s) * h));
  }
  return out;
}

}  // namespace

std::vector<SpinorState> split_step_evolve(const SpinorState& state0, const OracleConfig& cfg,
                                           const SimulationParams& params, double tau_end) {
  return evolve(state0, cfg, params, tau_end, false);
}

std::vector<SpinorState> lab_frame_evolve(const SpinorState& state0, const OracleConfig& cfg,
                                          const SimulationParams& params, double tau_end) {
  return evolve(state0, cfg, params, tau_end, true);
}

SpinorState split_step_extrapolated(const SpinorState& state0, const OracleConfig& cfg,
                                    const SimulationParams& params, double tau_end, int levels) {
  if (levels < 1 || levels > 6) throw InvalidParameter("levels must be in 1..6");
  const double span = tau_end - state0.tau;
  const auto steps0 = static_cast<std::size_t>(std::ceil(span / cfg.d_tau - 1e-9));
  std::vector<SpinorState> t;
  for (int l = 0; l < levels; ++l) {
    OracleConfig c = cfg;
    c.d_tau = steps0 > 0 ? span / static_cast<double>(steps0 << l) : cfg.d_tau;
    c.store_every = std::numeric_limits<int>::max();
    t.push_back(split_step_evolve(state0, c, params, tau_end).back());
  }
  for (int j = 1; j < levels; ++j) {
    const double factor = 1.0 / (std::pow(4.0, j) - 1.0);
    for (int l = levels - 1; l >= j; --l)
      for (std::size_t i = 0; i < t[l].psi_e.size(); ++i) {
        t[l].psi_e[i] += (t[l].psi_e[i] - t[l - 1].psi_e[i]) * factor;
        t[l].psi_g[i] += (t[l].psi_g[i] - t[l - 1].psi_g[i]) * factor;
      }
  }
  return t.back();
}

}  // namespace rabi
