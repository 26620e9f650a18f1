#include "rabi/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rabi/analytic.hpp"
#include "rabi/spectral.hpp"

namespace rabi {

namespace {

constexpr cplx kI(0.0, 1.0);

cplx kernel(double delta, double t) {
  const double mu = effective_rabi(delta);
  return std::exp(-kI * (delta * t)) * (std::sin(mu * t) / mu);
}

cplx kernel_deriv(double delta, double t) {
  const double mu = effective_rabi(delta);
  return std::exp(-kI * (delta * t)) *
         cplx(std::cos(mu * t), -delta * std::sin(mu * t) / mu);
}

std::vector<cplx>& row(SpinorState& s, DetuningBranch b) {
  return b == DetuningBranch::plus ? s.psi_e : s.psi_g;
}
const std::vector<cplx>& row(const SpinorState& s, DetuningBranch b) {
  return b == DetuningBranch::plus ? s.psi_e : s.psi_g;
}

void check_uniform(const std::vector<double>& tau) {
  if (tau.size() < 2) throw InvalidGrid("tau grid needs at least two samples");
  if (tau[0] != 0.0) throw InvalidGrid("tau grid must start at 0");
  const double h = tau[1] - tau[0];
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidGrid("tau grid must increase");
  for (std::size_t m = 1; m < tau.size(); ++m) {
    const double want = static_cast<double>(m) * h;
    if (std::abs(tau[m] - want) > 1e-9 * std::max(1.0, std::abs(want)))
      throw InvalidGrid("tau grid is not uniform at index " + std::to_string(m));
  }
}

}  // namespace

cplx greens_kernel(DetuningBranch branch, double nu, double tau, double tau_prime,
                   const SimulationParams& params) {
  const double t = tau - tau_prime;
  if (t <= 0.0) return 0.0;
  return kernel(detuning(branch, nu, params.delta_omega, params.omega_r), t);
}

cplx greens_kernel_derivative(DetuningBranch branch, double nu, double tau, double tau_prime,
                              const SimulationParams& params) {
  const double t = tau - tau_prime;
  if (t < 0.0) return 0.0;
  return kernel_deriv(detuning(branch, nu, params.delta_omega, params.omega_r), t);
}

ImpulseCheck greens_impulse_check(DetuningBranch branch, double nu, const SimulationParams& params,
                                  double tau_prime, double center, double width, double freq,
                                  int steps) {
  if (!(width > 0.0) || steps < 2) throw InvalidParameter("impulse check needs width > 0");
  if (steps % 2) ++steps;
  const double delta = detuning(branch, nu, params.delta_omega, params.omega_r);
  auto phi = [&](double t, int d) {
    const double x = (t - center) / width;
    const cplx e = std::exp(cplx(-0.5 * x * x, freq * t));
    const cplx l = cplx(-x / width, freq);  // log-derivative
    if (d == 0) return e;
    if (d == 1) return l * e;
    return (l * l - 1.0 / (width * width)) * e;
  };
  const double b = std::max(tau_prime, center + 12.0 * width);
  const double h = (b - tau_prime) / steps;
  cplx sum = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double t = tau_prime + h * i;
    const cplx lphi = phi(t, 2) - 2.0 * kI * delta * phi(t, 1) + phi(t, 0);
    const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * greens_kernel(branch, nu, t, tau_prime, params) * lphi;
  }
  return {sum * (h / 3.0), phi(tau_prime, 0)};
}

std::pair<double, double> quadratic_detuning_coeffs(int k, double tau, double omega_r) {
  if (k < 1) throw InvalidParameter("order must be >= 1");
  if (!(omega_r > 0.0)) throw InvalidParameter("omega_r must be positive");
  // t^(2k-1) / (omega_r^(k-1) (2k-1)!) built as a running product.
  double p = tau;  // j = 1
  for (int j = 2; j <= 2 * k - 1; ++j) p *= tau / static_cast<double>(j) / (j % 2 == 1 ? omega_r : 1.0);
  const double q = p * tau / (2.0 * k) / omega_r;  // tau^(2k) / (omega_r^k (2k)!)
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;   // (-1)^k
  return {sign * q, 2.0 * sign * p};               // -2 (-1)^(k-1) = 2 (-1)^k
}

QuadraticCoeffs::QuadraticCoeffs(double omega_r, double epsilon)
    : omega_r_(omega_r), epsilon_(epsilon) {
  if (!(omega_r > 0.0) || !std::isfinite(omega_r))
    throw InvalidParameter("omega_r must be positive");
  if (!std::isfinite(epsilon)) throw InvalidParameter("epsilon must be finite");
}

std::pair<double, double> QuadraticCoeffs::operator()(int k, double tau) const {
  return quadratic_detuning_coeffs(k, tau, omega_r_);
}

double QuadraticCoeffs::trap_frequency() const { return std::sqrt(epsilon_ / omega_r_); }

SpinorState apply_order_correction(int order, const SpinorState& state, double tau,
                                   const CoefficientGenerator& coeffs, DetuningBranch branch) {
  const auto [g, h] = coeffs(order, tau);
  SpinorState out(state.grid, state.frame, state.tau);
  const auto& in = row(state, branch);
  auto& o = row(out, branch);
  const std::vector<cplx> z = apply_zeta(state.grid, in);
  const double s = -sigma_z(branch) * 0.5;
  for (std::size_t j = 0; j < in.size(); ++j)
    o[j] = s * (g * state.grid.nu(j) * in[j] + h * z[j]);
  return out;
}

SpinorState PerturbationSeries::resummed(std::size_t m, int n) const {
  const int top = (n < 0 || n > max_order()) ? max_order() : n;
  SpinorState out = orders.at(0).at(m);
  double w = 1.0;
  for (int k = 1; k <= top; ++k) {
    w *= epsilon;
    const SpinorState& c = orders[k][m];
    for (std::size_t j = 0; j < out.psi_e.size(); ++j) {
      out.psi_e[j] += w * c.psi_e[j];
      out.psi_g[j] += w * c.psi_g[j];
    }
  }
  return out;
}

std::vector<SpinorState> PerturbationSeries::resummed() const {
  std::vector<SpinorState> out;
  out.reserve(tau_grid.size());
  for (std::size_t m = 0; m < tau_grid.size(); ++m) out.push_back(resummed(m));
  return out;
}

namespace {

// a <- a + (a - b) * factor, order by order and sample by sample.
void richardson_step(std::vector<std::vector<SpinorState>>& fine,
                     const std::vector<std::vector<SpinorState>>& coarse, double factor) {
  for (std::size_t k = 0; k < fine.size(); ++k)
    for (std::size_t m = 0; m < fine[k].size(); ++m) {
      SpinorState& a = fine[k][m];
      const SpinorState& b = coarse[k][m];
      for (std::size_t j = 0; j < a.psi_e.size(); ++j) {
        a.psi_e[j] += (a.psi_e[j] - b.psi_e[j]) * factor;
        a.psi_g[j] += (a.psi_g[j] - b.psi_g[j]) * factor;
      }
    }
}

std::vector<std::vector<SpinorState>> subsample(std::vector<std::vector<SpinorState>>&& v,
                                                std::size_t stride) {
  for (auto& track : v) {
    std::vector<SpinorState> out;
    out.reserve(track.size() / stride + 1);
    for (std::size_t m = 0; m < track.size(); m += stride) out.push_back(std::move(track[m]));
    track = std::move(out);
  }
  return std::move(v);
}

}  // namespace

PerturbationSeries perturbative_solve_extrapolated(const SpinorState& state0,
                                                   const SimulationParams& params,
                                                   const std::vector<double>& tau_grid, int N,
                                                   int levels, Exec exec, double phi0) {
  if (levels < 1 || levels > 6) throw InvalidParameter("levels must be in 1..6");
  check_uniform(tau_grid);
  const std::size_t M = tau_grid.size() - 1;
  const double h = tau_grid[1];
  // tables[l][j]: level-l solution after j extrapolation sweeps, on tau_grid.
  std::vector<std::vector<std::vector<SpinorState>>> vals(levels), ders(levels);
  PerturbationSeries base;
  for (int l = 0; l < levels; ++l) {
    const std::size_t r = std::size_t{1} << l;
    std::vector<double> fine(M * r + 1);
    for (std::size_t m = 0; m < fine.size(); ++m)
      fine[m] = static_cast<double>(m) * (h / static_cast<double>(r));
    PerturbationSeries s = perturbative_solve(state0, params, fine, N, exec, phi0);
    vals[l] = subsample(std::move(s.orders), r);
    ders[l] = subsample(std::move(s.derivatives), r);
    if (l == 0) base = std::move(s);
  }
  // Neville-style table: after sweep j, entry l holds the h^(2j) accurate value.
  for (int j = 1; j < levels; ++j) {
    const double factor = 1.0 / (std::pow(4.0, j) - 1.0);
    for (int l = levels - 1; l >= j; --l) {
      richardson_step(vals[l], vals[l - 1], factor);
      richardson_step(ders[l], ders[l - 1], factor);
    }
  }
  base.tau_grid = tau_grid;
  base.orders = std::move(vals[levels - 1]);
  base.derivatives = std::move(ders[levels - 1]);
  for (auto* t : {&base.orders, &base.derivatives})
    for (auto& track : *t)
      for (std::size_t m = 0; m < track.size(); ++m) track[m].tau = tau_grid[m];
  return base;
}

void greens_convolve(const MomentumGrid& grid, const SimulationParams& params, double d_tau,
                     const std::vector<SpinorState>& source, std::vector<SpinorState>& value,
                     std::vector<SpinorState>& derivative, Exec exec) {
  const std::size_t T = source.size();
  const std::size_t n = grid.size();
  // Kernel tables indexed by lag d = m - i.
  std::vector<cplx> gp(T * n), gm(T * n), dp(T * n), dm(T * n);
  for (std::size_t d = 0; d < T; ++d) {
    const double t = static_cast<double>(d) * d_tau;
    for (std::size_t j = 0; j < n; ++j) {
      const double nu = grid.nu(j);
      const double ep = detuning(DetuningBranch::plus, nu, params.delta_omega, params.omega_r);
      const double em = detuning(DetuningBranch::minus, nu, params.delta_omega, params.omega_r);
      gp[d * n + j] = kernel(ep, t);
      gm[d * n + j] = kernel(em, t);
      dp[d * n + j] = kernel_deriv(ep, t);
      dm[d * n + j] = kernel_deriv(em, t);
    }
  }
  value.assign(T, SpinorState(grid, Frame::interaction, 0.0));
  derivative.assign(T, SpinorState(grid, Frame::interaction, 0.0));
  const auto TT = static_cast<std::ptrdiff_t>(T);
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::parallel)
  for (std::ptrdiff_t mm = 1; mm < TT; ++mm) {
    const auto m = static_cast<std::size_t>(mm);
    SpinorState& v = value[m];
    SpinorState& dv = derivative[m];
    v.tau = dv.tau = static_cast<double>(m) * d_tau;
    // Trapezoid over i = 0..m; the i = m term of the value vanishes (G(0) = 0).
    for (std::size_t i = 0; i <= m; ++i) {
      const double w = (i == 0 || i == m) ? 0.5 * d_tau : d_tau;
      const std::size_t off = (m - i) * n;
      const cplx* fe = source[i].psi_e.data();
      const cplx* fg = source[i].psi_g.data();
      for (std::size_t j = 0; j < n; ++j) {
        const cplx a = w * fe[j];
        const cplx b = w * fg[j];
        v.psi_e[j] += gp[off + j] * a;
        v.psi_g[j] += gm[off + j] * b;
        dv.psi_e[j] += dp[off + j] * a;
        dv.psi_g[j] += dm[off + j] * b;
      }
    }
  }
}

void greens_convolve_naive(const MomentumGrid& grid, const SimulationParams& params, double d_tau,
                           const std::vector<SpinorState>& source, std::vector<SpinorState>& value,
                           std::vector<SpinorState>& derivative) {
  const std::size_t T = source.size();
  value.assign(T, SpinorState(grid, Frame::interaction, 0.0));
  derivative.assign(T, SpinorState(grid, Frame::interaction, 0.0));
  for (std::size_t m = 1; m < T; ++m) {
    const double tau = static_cast<double>(m) * d_tau;
    value[m].tau = derivative[m].tau = tau;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double nu = grid.nu(j);
      cplx ve = 0, vg = 0, de = 0, dg = 0;
      for (std::size_t i = 0; i <= m; ++i) {
        const double w = (i == 0 || i == m) ? 0.5 * d_tau : d_tau;
        const double tp = static_cast<double>(i) * d_tau;
        const cplx fe = source[i].psi_e[j], fg = source[i].psi_g[j];
        ve += w * greens_kernel(DetuningBranch::plus, nu, tau, tp, params) * fe;
        vg += w * greens_kernel(DetuningBranch::minus, nu, tau, tp, params) * fg;
        de += w * greens_kernel_derivative(DetuningBranch::plus, nu, tau, tp, params) * fe;
        dg += w * greens_kernel_derivative(DetuningBranch::minus, nu, tau, tp, params) * fg;
      }
      value[m].psi_e[j] = ve;
      value[m].psi_g[j] = vg;
      derivative[m].psi_e[j] = de;
      derivative[m].psi_g[j] = dg;
    }
  }
}

PerturbationSeries perturbative_solve(const SpinorState& state0, const SimulationParams& params,
                                      const std::vector<double>& tau_grid, int N, Exec exec,
                                      double phi0) {
  const QuadraticCoeffs coeffs(params.omega_r, params.epsilon);
  return perturbative_solve(state0, params, tau_grid, N, coeffs, exec, phi0);
}

PerturbationSeries perturbative_solve(const SpinorState& state0, const SimulationParams& params,
                                      const std::vector<double>& tau_grid, int N,
                                      const CoefficientGenerator& coeffs, Exec exec, double phi0) {
  params.validate();
  if (N < 0) throw InvalidParameter("order N must be >= 0");
  if (state0.frame != Frame::interaction)
    throw InvalidParameter("perturbative_solve needs an interaction-picture state");
  if (state0.tau != 0.0) throw InvalidParameter("initial state must sit at tau = 0");
  check_uniform(tau_grid);
  const MomentumGrid& grid = state0.grid;
  const std::size_t T = tau_grid.size();
  const double bytes = 2.0 * (N + 1.0) * static_cast<double>(T) * 2.0 *
                       static_cast<double>(grid.size()) * sizeof(cplx);
  if (N > kMaxPerturbativeOrder || bytes > kTrackBudgetBytes)
    throw CapacityError("order " + std::to_string(N) + " on " + std::to_string(T) +
                        " tau samples exceeds the derivative-track capacity");
  const double h = tau_grid[1];

  PerturbationSeries s;
  s.grid = grid;
  s.tau_grid = tau_grid;
  s.epsilon = params.epsilon;
  s.orders.resize(N + 1);
  s.derivatives.resize(N + 1);

  SimulationParams free = params;
  free.kappa = 0.0;
  free.epsilon = 0.0;
  auto& o0 = s.orders[0];
  auto& d0 = s.derivatives[0];
  o0.resize(T);
  d0.resize(T);
  for (std::size_t m = 0; m < T; ++m) {
    const double tau = static_cast<double>(m) * h;
    o0[m] = apply_elements(free_propagator_elements(grid, free, tau, phi0, exec), state0);
    d0[m] = apply_elements(free_derivative_elements(grid, free, tau, phi0, exec), state0);
    o0[m].tau = d0[m].tau = tau;
  }

  const std::size_t n = grid.size();
  std::vector<SpinorState> src(T, SpinorState(grid, Frame::interaction, 0.0));
  for (int k = 1; k <= N; ++k) {
    const auto TT = static_cast<std::ptrdiff_t>(T);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (std::ptrdiff_t mm = 0; mm < TT; ++mm) {
      const auto m = static_cast<std::size_t>(mm);
      const double tau = static_cast<double>(m) * h;
      // Combine sum_l g_{k-l} psi^(l)' and sum_l h_{k-l} psi^(l)' so zeta is
      // applied once per row.
      std::vector<cplx> ge(n), gg(n), he(n), hg(n);
      for (int l = 0; l < k; ++l) {
        const auto [g, hh] = coeffs(k - l, tau);
        const SpinorState& d = s.derivatives[l][m];
        for (std::size_t j = 0; j < n; ++j) {
          ge[j] += g * d.psi_e[j];
          gg[j] += g * d.psi_g[j];
          he[j] += hh * d.psi_e[j];
          hg[j] += hh * d.psi_g[j];
        }
      }
      const std::vector<cplx> ze = apply_zeta(grid, he);
      const std::vector<cplx> zg = apply_zeta(grid, hg);
      // -2i (-+ delta^(k-l)) psi' = +-i (g nu + h zeta) psi'
      SpinorState& f = src[m];
      for (std::size_t j = 0; j < n; ++j) {
        const double nu = grid.nu(j);
        f.psi_e[j] = kI * (nu * ge[j] + ze[j]);
        f.psi_g[j] = -kI * (nu * gg[j] + zg[j]);
      }
    }
    greens_convolve(grid, params, h, src, s.orders[k], s.derivatives[k], exec);
  }
  return s;
}

}  // namespace rabi
