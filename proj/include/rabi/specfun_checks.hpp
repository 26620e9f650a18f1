#pragma once

// Randomized identity checks for the special functions. Shared by the unit
// tests, the acceptance suite and `selftest`.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace rabi {

struct PropertyCheck {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  int failures_to_evaluate = 0;  // samples that threw

  bool passed() const { return failures_to_evaluate == 0 && max_deviation <= tolerance; }
};

std::vector<PropertyCheck> specfun_property_suite(int samples, std::uint64_t seed);

// Hermite function from its 1F1 representation only (no integer shortcut).
std::complex<double> hermite_h_hypergeometric(std::complex<double> a, std::complex<double> z);

}  // namespace rabi
