#include "rabi/potential.hpp"

#include <cmath>
#include <string>

namespace rabi {

const char* to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::none: return "none";
    case PotentialKind::linear: return "linear";
    case PotentialKind::quadratic: return "quadratic";
    case PotentialKind::tabulated: return "tabulated";
  }
  return "?";
}

void PotentialSpec::validate(const MomentumGrid& grid) const {
  switch (kind) {
    case PotentialKind::none: break;
    case PotentialKind::linear:
      if (!std::isfinite(kappa)) throw InvalidParameter("linear potential: kappa not finite");
      break;
    case PotentialKind::quadratic:
      if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw InvalidParameter("quadratic potential: epsilon must be finite and >= 0");
      break;
    case PotentialKind::tabulated:
      if (values.size() != grid.size())
        throw InvalidParameter("tabulated potential has " + std::to_string(values.size()) +
                               " values, grid has " + std::to_string(grid.size()));
      for (double v : values)
        if (!std::isfinite(v)) throw InvalidParameter("tabulated potential has non-finite values");
      break;
  }
}

std::vector<double> PotentialSpec::sample(const MomentumGrid& grid) const {
  validate(grid);
  const std::size_t n = grid.size();
  std::vector<double> v(n, 0.0);
  switch (kind) {
    case PotentialKind::none: break;
    case PotentialKind::linear:
      throw InvalidParameter("linear potential has no periodic position-space sampling");
    case PotentialKind::quadratic:
      for (std::size_t k = 0; k < n; ++k) v[k] = epsilon * grid.zeta(k) * grid.zeta(k);
      break;
    case PotentialKind::tabulated: v = values; break;
  }
  return v;
}

std::vector<double> PotentialSpec::gradient(const MomentumGrid& grid) const {
  validate(grid);
  const std::size_t n = grid.size();
  std::vector<double> g(n, 0.0);
  switch (kind) {
    case PotentialKind::none: break;
    case PotentialKind::linear:
      for (auto& x : g) x = 2.0 * kappa;
      break;
    case PotentialKind::quadratic:
      for (std::size_t k = 0; k < n; ++k) g[k] = 2.0 * epsilon * grid.zeta(k);
      break;
    case PotentialKind::tabulated: {
      // Central differences on the periodic axis; neighbours in FFT order are
      // k +- 1 modulo n.
      const double h = grid.d_zeta();
      for (std::size_t k = 0; k < n; ++k)
        g[k] = (values[(k + 1) % n] - values[(k + n - 1) % n]) / (2.0 * h);
      break;
    }
  }
  return g;
}

}  // namespace rabi
