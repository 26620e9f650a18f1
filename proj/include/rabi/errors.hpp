#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace rabi {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// A shifted or evolved wavefunction left the sampled momentum window.
class GridOverflow : public Error {
 public:
  using Error::Error;
};

// The split-step integrator saw amplitude at the grid edge.
class AliasingError : public Error {
 public:
  using Error::Error;
};

// Gamma function (or a parameter of 1F1) sits on a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

// A special function could not reach its accuracy target. The best value
// found so far is kept so callers can decide whether to use it.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, std::complex<double> partial, double est_error)
      : Error(what), partial_(partial), est_error_(est_error) {}

  std::complex<double> partial_value() const { return partial_; }
  double est_error() const { return est_error_; }

 private:
  std::complex<double> partial_;
  double est_error_;
};

// A phase-noise path was evaluated outside the sampled time range.
class CoverageError : public Error {
 public:
  using Error::Error;
};

class InvalidGrid : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

// Two output bundles cannot be compared (different grids or time samples).
class IncomparableError : public Error {
 public:
  using Error::Error;
};

// Scenario validation failure. Carries every violated field, not just the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid scenario config:";
    for (const auto& s : v) out += "\n  - " + s;
    return out;
  }
  std::vector<std::string> violations_;
};

}  // namespace rabi
