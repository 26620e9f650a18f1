#include "rabi/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace rabi {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanPair {
  fftw_plan fwd;
  fftw_plan bwd;
};

PlanPair plans_for(std::size_t n) {
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<cplx> a(n), b(n);
  auto* pa = reinterpret_cast<fftw_complex*>(a.data());
  auto* pb = reinterpret_cast<fftw_complex*>(b.data());
  const int ni = static_cast<int>(n);
  PlanPair p{fftw_plan_dft_1d(ni, pa, pb, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED),
             fftw_plan_dft_1d(ni, pa, pb, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED)};
  cache.emplace(n, p);
  return p;
}

}  // namespace

Spectral::Spectral(std::size_t n) : n_(n) {
  auto p = plans_for(n);
  fwd_ = p.fwd;
  bwd_ = p.bwd;
}

void Spectral::to_position(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != n_ || out.size() != n_) throw InvalidParameter("spectral size mismatch");
  // FFTW never writes to the input of an out-of-place complex transform.
  auto* pi = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
  fftw_execute_dft(static_cast<fftw_plan>(bwd_), pi, reinterpret_cast<fftw_complex*>(out.data()));
}

void Spectral::to_momentum(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != n_ || out.size() != n_) throw InvalidParameter("spectral size mismatch");
  auto* pi = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
  fftw_execute_dft(static_cast<fftw_plan>(fwd_), pi, reinterpret_cast<fftw_complex*>(out.data()));
  const double s = 1.0 / static_cast<double>(n_);
  for (auto& v : out) v *= s;
}

std::vector<cplx> apply_position_diagonal(const MomentumGrid& grid, std::span<const cplx> psi,
                                          std::span<const cplx> f) {
  const std::size_t n = grid.size();
  Spectral fft(n);
  std::vector<cplx> x(n), out(n);
  fft.to_position(psi, x);
  for (std::size_t k = 0; k < n; ++k) x[k] *= f[k];
  fft.to_momentum(x, out);
  return out;
}

std::vector<cplx> apply_zeta(const MomentumGrid& grid, std::span<const cplx> psi) {
  const std::size_t n = grid.size();
  std::vector<cplx> f(n);
  for (std::size_t k = 0; k < n; ++k) f[k] = grid.zeta(k);
  // The Nyquist bin has no partner of opposite sign; zero it so zeta stays Hermitian.
  f[n / 2] = 0.0;
  return apply_position_diagonal(grid, psi, f);
}

std::vector<cplx> momentum_shift(const MomentumGrid& grid, std::span<const cplx> psi, double a,
                                 double tol) {
  const std::size_t n = grid.size();
  const double m_real = std::round(a / grid.d_nu());
  const auto m = static_cast<std::ptrdiff_t>(m_real);
  const double r = a - m_real * grid.d_nu();

  std::vector<cplx> out(n, cplx(0.0));
  double lost = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto t = static_cast<std::ptrdiff_t>(j) + m;
    if (t >= 0 && t < static_cast<std::ptrdiff_t>(n))
      out[static_cast<std::size_t>(t)] = psi[j];
    else
      lost = std::max(lost, std::abs(psi[j]));
  }
  if (lost > tol)
    throw GridOverflow("momentum shift by " + std::to_string(a) +
                       " pushes amplitude " + std::to_string(lost) + " off the grid");

  if (std::abs(r) > 1e-12 * grid.d_nu()) {
    std::vector<cplx> f(n);
    for (std::size_t k = 0; k < n; ++k) f[k] = std::polar(1.0, r * grid.zeta(k));
    out = apply_position_diagonal(grid, out, f);
  }
  return out;
}

double edge_amplitude(std::span<const cplx> psi, std::size_t width) {
  const std::size_t n = psi.size();
  width = std::min(width, n / 2);
  double m = 0.0;
  for (std::size_t j = 0; j < width; ++j)
    m = std::max({m, std::abs(psi[j]), std::abs(psi[n - 1 - j])});
  return m;
}

}  // namespace rabi
