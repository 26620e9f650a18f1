#include "rabi/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "rabi/spectral.hpp"

namespace rabi {

double DisplacementAlgebraReport::max_deviation() const {
  return *std::max_element(deviation.begin(), deviation.end());
}

DisplacementAlgebraReport check_displacement_algebra(const MomentumGrid& grid,
                                                     const SimulationParams& params) {
  const double w = params.omega_r;
  const double dw = params.delta_omega;
  const double phi = 0.37;
  const std::size_t n = grid.size();
  DisplacementAlgebraReport rep;
  const double bins = 2.0 * w / grid.d_nu();
  rep.integer_shift = std::abs(bins - std::round(bins)) <= 1e-12 * std::max(1.0, std::abs(bins));

  // Probe: a chirped packet in the middle of the window, narrow enough that
  // both displaced copies stay inside (nine widths of room each side).
  const double room = 0.5 * (grid.nu_max() - grid.nu_min()) - 2.0 * std::abs(w);
  if (!(room > 0.0)) throw InvalidGrid("grid narrower than the 2 omega_r displacement");
  const double c = 0.5 * (grid.nu_min() + grid.nu_max());
  const double s = room / 9.0;
  std::vector<cplx> psi(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = (grid.nu(j) - c) / s;
    psi[j] = std::exp(cplx(-0.5 * x * x, 0.3 * x * x + 1.1 * x));
  }

  const cplx ph = std::polar(1.0, phi);
  // D psi = e^{i phi} psi(nu - 2 w); D^+ psi = e^{-i phi} psi(nu + 2 w).
  auto D = [&](const std::vector<cplx>& v) {
    auto o = momentum_shift(grid, v, 2.0 * w, 1e-13);
    for (auto& x : o) x *= ph;
    return o;
  };
  auto Dh = [&](const std::vector<cplx>& v) {
    auto o = momentum_shift(grid, v, -2.0 * w, 1e-13);
    for (auto& x : o) x *= std::conj(ph);
    return o;
  };
  auto mul = [&](const std::function<double(double)>& f, std::vector<cplx> v) {
    for (std::size_t j = 0; j < n; ++j) v[j] *= f(grid.nu(j));
    return v;
  };
  auto dev = [&](const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
  };

  const auto nu = [](double v) { return v; };
  const auto dp = [&](double v) { return detuning(DetuningBranch::plus, v, dw, w); };
  const auto dm = [&](double v) { return detuning(DetuningBranch::minus, v, dw, w); };

  rep.deviation[0] = dev(Dh(mul(nu, D(psi))), mul([&](double v) { return v + 2.0 * w; }, psi));
  rep.deviation[1] = dev(D(mul(nu, Dh(psi))), mul([&](double v) { return v - 2.0 * w; }, psi));
  rep.deviation[2] = dev(Dh(mul(dp, D(psi))), mul([&](double v) { return -dm(v); }, psi));
  rep.deviation[3] = dev(D(mul(dm, Dh(psi))), mul([&](double v) { return -dp(v); }, psi));
  return rep;
}

std::pair<double, double> resonant_pair(const SimulationParams& params) {
  const double minus = resonant_momentum(DetuningBranch::minus, params.delta_omega, params.omega_r);
  return {minus, minus + 2.0 * params.omega_r};
}

}  // namespace rabi
