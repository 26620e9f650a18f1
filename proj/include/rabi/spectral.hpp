#pragma once

// FFT round trips between the momentum grid and its dual position axis.
//
// phi(zeta_k) = sum_j psi(nu_j) exp(+2 pi i j k / n) up to a k-dependent phase
// that cancels in every diagonal round trip, so only round trips are exposed.

#include <functional>
#include <span>
#include <vector>

#include "rabi/core.hpp"

namespace rabi {

class Spectral {
 public:
  explicit Spectral(std::size_t n);

  std::size_t size() const { return n_; }

  // out = unnormalized backward transform of in (momentum -> position).
  void to_position(std::span<const cplx> in, std::span<cplx> out) const;
  // out = forward transform / n (position -> momentum).
  void to_momentum(std::span<const cplx> in, std::span<cplx> out) const;

 private:
  std::size_t n_;
  void* fwd_;
  void* bwd_;
};

// psi -> f(zeta) psi, with f sampled on grid.zeta_axis().
std::vector<cplx> apply_position_diagonal(const MomentumGrid& grid, std::span<const cplx> psi,
                                          std::span<const cplx> f);

// (zeta psi)(nu) = i psi'(nu), spectrally.
std::vector<cplx> apply_zeta(const MomentumGrid& grid, std::span<const cplx> psi);

// out(nu) = psi(nu - a). Whole multiples of d_nu are an index shift with zero
// fill; the remainder is a spectral phase exp(i r zeta). Throws GridOverflow
// if more than `tol` of amplitude leaves the window.
std::vector<cplx> momentum_shift(const MomentumGrid& grid, std::span<const cplx> psi, double a,
                                 double tol = 1e-12);

// Largest |psi| over the first and last `width` samples.
double edge_amplitude(std::span<const cplx> psi, std::size_t width);

}  // namespace rabi
