#pragma once

// Complex gamma, Kummer's confluent hypergeometric function 1F1 and Hermite
// functions of complex degree.

#include <complex>

#include "rabi/errors.hpp"

namespace rabi {

using cplx = std::complex<double>;

enum class SpecMethod { series, kummer_transformed, asymptotic, polynomial, continuation };

const char* to_string(SpecMethod m);

struct SpecFunResult {
  cplx value;
  double est_error = 0.0;  // heuristic absolute error
  SpecMethod method = SpecMethod::series;
};

// Direct series is used below this |z|; above it the asymptotic expansion is
// tried first.
inline constexpr double kSeriesSwitchRadius = 30.0;
inline constexpr int kTermBudget = 500;

cplx gamma_complex(cplx z);
// Principal-ish log Gamma: exp(log_gamma(z)) == Gamma(z); the imaginary part
// is not unwrapped.
cplx log_gamma(cplx z);
// 1 / Gamma(z), exactly 0 at the poles.
cplx rgamma(cplx z);

SpecFunResult kummer_1f1(cplx a, cplx b, cplx z);

// d/dz 1F1(a; b; z) = (a / b) 1F1(a + 1; b + 1; z).
SpecFunResult kummer_1f1_deriv(cplx a, cplx b, cplx z);

struct KummerPair {
  cplx value;
  cplx deriv;
  double est_error = 0.0;
  SpecMethod method = SpecMethod::series;
};

// 1F1 and its z-derivative together; shares one continuation path when that
// method is needed.
KummerPair kummer_1f1_with_deriv(cplx a, cplx b, cplx z);

SpecFunResult hermite_h(cplx a, cplx z);

}  // namespace rabi
