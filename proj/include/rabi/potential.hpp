#pragma once

#include <vector>

#include "rabi/core.hpp"

namespace rabi {

enum class PotentialKind { none, linear, quadratic, tabulated };

const char* to_string(PotentialKind k);

// External potential common to both internal levels, in units of Omega.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::none;
  double kappa = 0.0;           // linear: V = 2 kappa zeta
  double epsilon = 0.0;         // quadratic: V = epsilon zeta^2
  std::vector<double> values;   // tabulated: V(zeta_k) in FFT order

  static PotentialSpec none() { return {}; }
  static PotentialSpec linear(double kappa) { return {PotentialKind::linear, kappa, 0.0, {}}; }
  static PotentialSpec quadratic(double epsilon) {
    return {PotentialKind::quadratic, 0.0, epsilon, {}};
  }
  static PotentialSpec tabulated(std::vector<double> v) {
    return {PotentialKind::tabulated, 0.0, 0.0, std::move(v)};
  }

  void validate(const MomentumGrid& grid) const;
  // V on the position axis of `grid` (FFT order). Not available for linear,
  // which is not periodic.
  std::vector<double> sample(const MomentumGrid& grid) const;
  // dV/dzeta on the position axis.
  std::vector<double> gradient(const MomentumGrid& grid) const;
};

}  // namespace rabi
