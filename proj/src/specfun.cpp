#include "rabi/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace rabi {

namespace {

constexpr double kPiF = 3.14159265358979323846;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Accept a method once its own error estimate is below this (relative).
constexpr double kAcceptRel = 1e-13;
// Give up (AccuracyError) above this.
constexpr double kFailRel = 1e-10;

// Lanczos, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

bool is_near_nonpositive_integer(cplx z) {
  return std::abs(z.imag()) < 1e-14 && z.real() <= 0.5 &&
         std::abs(z.real() - std::round(z.real())) < 1e-14 * std::max(1.0, std::abs(z.real()));
}

cplx log_sin_pi(cplx z) {
  const double y = z.imag();
  const cplx i(0.0, 1.0);
  if (std::abs(y) < 20.0) return std::log(std::sin(kPiF * z));
  if (y > 0.0)
    return -i * kPiF * z - cplx(std::log(2.0), -kPiF / 2) +
           std::log(1.0 - std::exp(2.0 * i * kPiF * z));
  return i * kPiF * z - cplx(std::log(2.0), kPiF / 2) + std::log(1.0 - std::exp(-2.0 * i * kPiF * z));
}

cplx lanczos_log_gamma(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) x += kLanczos[k] / (z + static_cast<double>(k));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPiF) + (z + 0.5) * std::log(t) - t + std::log(x);
}

struct Partial {
  cplx value;
  double est;  // absolute
};

Partial taylor_series(cplx a, cplx b, cplx z) {
  cplx sum = 1.0, term = 1.0;
  double maxabs = 1.0;
  int quiet = 0;
  int n = 0;
  for (; n < kTermBudget; ++n) {
    const double dn = static_cast<double>(n);
    term *= (a + dn) / ((b + dn) * (dn + 1.0)) * z;
    sum += term;
    maxabs = std::max(maxabs, std::abs(term));
    if (term == 0.0) break;
    if (std::abs(term) <= kEps * 0.1 * std::abs(sum) && dn > std::abs(z)) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
  }
  double est = kEps * (n + 1) * maxabs;
  if (n == kTermBudget) est += std::abs(term) * 10.0;
  return {sum, est};
}

Partial polynomial(cplx a, cplx b, cplx z) {
  const int deg = static_cast<int>(std::lround(-a.real()));
  cplx sum = 1.0, term = 1.0;
  double maxabs = 1.0;
  for (int n = 0; n < deg; ++n) {
    const double dn = static_cast<double>(n);
    term *= (a + dn) / ((b + dn) * (dn + 1.0)) * z;
    sum += term;
    maxabs = std::max(maxabs, std::abs(term));
  }
  return {sum, kEps * (deg + 1) * maxabs};
}

// One asymptotic sum sum_s (p)_s (q)_s / s! w^s, truncated at its smallest term.
Partial asymptotic_sum(cplx p, cplx q, cplx w) {
  cplx sum = 1.0, term = 1.0;
  double last = 1.0;
  for (int s = 0; s < kTermBudget; ++s) {
    const double ds = static_cast<double>(s);
    const cplx next = term * (p + ds) * (q + ds) / (ds + 1.0) * w;
    const double an = std::abs(next);
    if (an == 0.0) return {sum, kEps * std::abs(sum)};
    if (an > last) break;
    term = next;
    sum += term;
    last = an;
    if (an < kEps * 0.1 * std::abs(sum)) break;
  }
  return {sum, last + kEps * std::abs(sum)};
}

Partial asymptotic(cplx a, cplx b, cplx z) {
  const Partial s1 = asymptotic_sum(a, a - b + 1.0, -1.0 / z);
  const Partial s2 = asymptotic_sum(b - a, 1.0 - a, 1.0 / z);
  const cplx lgb = log_gamma(b);
  cplx f1 = 0.0, f2 = 0.0;
  if (!is_nonpositive_integer(b - a)) f1 = std::exp(lgb - log_gamma(b - a) - a * std::log(-z));
  if (!is_nonpositive_integer(a)) f2 = std::exp(lgb - log_gamma(a) + z + (a - b) * std::log(z));
  const cplx v = f1 * s1.value + f2 * s2.value;
  const double est = std::abs(f1) * s1.est + std::abs(f2) * s2.est +
                     kEps * 10.0 * (std::abs(f1 * s1.value) + std::abs(f2 * s2.value));
  return {v, est};
}

// Value and z-derivative of 1F1 at z, by Taylor stepping Kummer's equation
// z w'' + (b - z) w' - a w = 0 along the ray from a point near the origin.
struct PairPartial {
  cplx w, dw;
  double est;
};

// Taylor-steps Kummer's equation z w'' + (b - z) w' - a w = 0 along the
// straight segment from z_from to z_to, which must not pass the origin.
// `rel` carries the relative error of (w, dw) in and out.
PairPartial walk(cplx a, cplx b, cplx z_from, cplx w, cplx dw, cplx z_to, double rel) {
  const double len = std::abs(z_to - z_from);
  int steps = 0;
  if (len > 0.0) {
    const cplx dir = (z_to - z_from) / len;
    cplx z0 = z_from;
    double remaining = len;
    while (remaining > 0.0) {
      const double r = std::abs(z0);
      double h = std::min(0.5 * r, 1.5 / (1.0 + (std::abs(a) + std::abs(b) + 1.0) / r));
      h = std::min(h, remaining);
      const cplx hz = dir * h;
      // c_{n+2} = [(n + a) c_n - (n + 1)(n + b - z0) c_{n+1}] / (z0 (n + 1)(n + 2))
      cplx cn = w, cn1 = dw;
      cplx hp = hz;
      cplx val = w + dw * hz;
      cplx der = dw;
      cplx hpd = 1.0;  // hz^(n+1) for the derivative
      double termmax = std::max(std::abs(w), std::abs(dw * hz));
      int quiet = 0;
      for (int n = 0; n < kTermBudget; ++n) {
        const double dn = static_cast<double>(n);
        const cplx cn2 =
            ((dn + a) * cn - (dn + 1.0) * (dn + b - z0) * cn1) / (z0 * (dn + 1.0) * (dn + 2.0));
        hp *= hz;   // hz^(n+2)
        hpd *= hz;  // hz^(n+1)
        const cplx tv = cn2 * hp;
        const cplx td = (dn + 2.0) * cn2 * hpd;
        val += tv;
        der += td;
        const double at = std::abs(tv) + std::abs(td) * h;
        termmax = std::max(termmax, at);
        cn = cn1;
        cn1 = cn2;
        if (at <= kEps * 0.01 * (std::abs(val) + std::abs(der) * h)) {
          if (++quiet >= 3) break;
        } else {
          quiet = 0;
        }
      }
      w = val;
      dw = der;
      z0 += hz;
      remaining -= h;
      rel += 4.0 * kEps * termmax / std::max(std::abs(w) + std::abs(dw) * h, 1e-300);
      ++steps;
    }
  }
  return {w, dw, (rel + kEps * steps) * std::abs(w)};
}

// 1F1 and its derivative: series near the origin, then outward along the ray.
// 1F1 is never the recessive solution of Kummer's equation, so errors made
// along the path shrink or grow with it and can be tracked relatively.
PairPartial continuation(cplx a, cplx b, cplx z) {
  const double az = std::abs(z);
  const double r0 = std::min(az, 1.0 / std::max({1.0, std::abs(a), std::abs(b)}));
  const cplx z0 = z / az * r0;
  const Partial w0 = taylor_series(a, b, z0);
  const Partial d0 = taylor_series(a + 1.0, b + 1.0, z0);
  const cplx w = w0.value, dw = a / b * d0.value;
  const double rel = (w0.est + std::abs(a / b) * d0.est) / std::max(std::abs(w), 1e-300);
  return walk(a, b, z0, w, dw, z, rel);
}

// Tricomi U(a; b; z) off the negative real axis: asymptotic expansion at
// z + T for large real T, then a horizontal walk back to z. The competing
// solution carries exp(z) and so shrinks along that walk.
Partial tricomi_u(cplx a, cplx b, cplx z) {
  const double far = std::max(40.0, 8.0 * std::norm(std::abs(a) + std::abs(b) + 1.0));
  const cplx zf = z + far;
  const Partial s = asymptotic_sum(a, a - b + 1.0, -1.0 / zf);
  const Partial sd = asymptotic_sum(a + 1.0, a - b + 1.0, -1.0 / zf);
  const cplx u = std::exp(-a * std::log(zf)) * s.value;
  const cplx du = -a * std::exp(-(a + 1.0) * std::log(zf)) * sd.value;
  const double rel = s.est / std::abs(s.value) + sd.est / std::abs(sd.value);
  const PairPartial r = walk(a, b, zf, u, du, z, rel);
  return {r.w, r.est};
}

SpecFunResult finish(const Partial& p, SpecMethod m, cplx a, cplx b, cplx z) {
  if (!std::isfinite(p.value.real()) || !std::isfinite(p.value.imag()) ||
      p.est > kFailRel * std::abs(p.value)) {
    throw AccuracyError("1F1(" + std::to_string(a.real()) + "+" + std::to_string(a.imag()) + "i; " +
                            std::to_string(b.real()) + "+" + std::to_string(b.imag()) + "i; " +
                            std::to_string(z.real()) + "+" + std::to_string(z.imag()) +
                            "i) did not reach its accuracy target",
                        p.value, p.est);
  }
  return {p.value, p.est, m};
}

void check_b(cplx b) {
  if (is_near_nonpositive_integer(b)) throw PoleError("1F1: b is a non-positive integer");
}

}  // namespace

const char* to_string(SpecMethod m) {
  switch (m) {
    case SpecMethod::series: return "series";
    case SpecMethod::kummer_transformed: return "kummer_transformed";
    case SpecMethod::asymptotic: return "asymptotic";
    case SpecMethod::polynomial: return "polynomial";
    case SpecMethod::continuation: return "continuation";
  }
  return "?";
}

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z)) throw PoleError("Gamma pole at " + std::to_string(z.real()));
  if (z.real() < 0.5) return std::log(kPiF) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
  return lanczos_log_gamma(z);
}

cplx gamma_complex(cplx z) { return std::exp(log_gamma(z)); }

cplx rgamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  return std::exp(-log_gamma(z));
}

namespace {

struct Attempt {
  Partial best{0.0, std::numeric_limits<double>::infinity()};
  SpecMethod method = SpecMethod::series;

  double rel() const { return best.est / std::max(std::abs(best.value), 1e-300); }
  void consider(const Partial& p, SpecMethod m) {
    if (std::isfinite(p.est) && p.est / std::max(std::abs(p.value), 1e-300) < rel()) {
      best = p;
      method = m;
    }
  }
  bool good() const { return best.est <= kAcceptRel * std::abs(best.value); }
};

// Series, transformed series or asymptotic expansion, whichever applies.
Attempt direct_methods(cplx a, cplx b, cplx z) {
  Attempt at;
  if (std::abs(z) < kSeriesSwitchRadius) {
    at.consider(taylor_series(a, b, z), SpecMethod::series);
    if (at.good() || z.real() >= 0.0) return at;
    const Partial t = taylor_series(b - a, b, -z);
    const cplx ez = std::exp(z);
    at.consider({ez * t.value, std::abs(ez) * t.est}, SpecMethod::kummer_transformed);
  } else {
    at.consider(asymptotic(a, b, z), SpecMethod::asymptotic);
  }
  return at;
}

}  // namespace

SpecFunResult kummer_1f1(cplx a, cplx b, cplx z) {
  check_b(b);
  if (z == 0.0) return {1.0, 0.0, SpecMethod::series};
  if (is_nonpositive_integer(a) && -a.real() <= kTermBudget) {
    // Exact finite sum: near a root only the relative accuracy suffers, and
    // est_error reports that.
    const Partial p = polynomial(a, b, z);
    return {p.value, p.est, SpecMethod::polynomial};
  }
  Attempt at = direct_methods(a, b, z);
  if (at.good()) return {at.best.value, at.best.est, at.method};
  const PairPartial c = continuation(a, b, z);
  at.consider({c.w, c.est}, SpecMethod::continuation);
  return finish(at.best, at.method, a, b, z);
}

KummerPair kummer_1f1_with_deriv(cplx a, cplx b, cplx z) {
  check_b(b);
  if (z != 0.0 && !is_nonpositive_integer(a)) {
    const Attempt at = direct_methods(a, b, z);
    const Attempt ad = direct_methods(a + 1.0, b + 1.0, z);
    if (!at.good() || !ad.good()) {
      const PairPartial c = continuation(a, b, z);
      const double scale = std::abs(c.w) + std::abs(c.dw);
      if (c.est <= kFailRel * scale && std::isfinite(scale))
        return {c.w, c.dw, c.est, SpecMethod::continuation};
    }
  }
  const SpecFunResult v = kummer_1f1(a, b, z);
  const SpecFunResult d = kummer_1f1_deriv(a, b, z);
  return {v.value, d.value, std::max(v.est_error, d.est_error), v.method};
}

SpecFunResult kummer_1f1_deriv(cplx a, cplx b, cplx z) {
  check_b(b);
  SpecFunResult r = kummer_1f1(a + 1.0, b + 1.0, z);
  const cplx f = a / b;
  r.value *= f;
  r.est_error *= std::abs(f);
  return r;
}

SpecFunResult hermite_h(cplx a, cplx z) {
  if (a.imag() == 0.0 && a.real() >= 0.0 && a.real() == std::round(a.real()) && a.real() <= 400.0) {
    const int n = static_cast<int>(a.real());
    cplx h0 = 1.0, h1 = 2.0 * z;
    if (n == 0) return {h0, 0.0, SpecMethod::polynomial};
    double mag = std::max(1.0, std::abs(h1));
    for (int k = 1; k < n; ++k) {
      const cplx h2 = 2.0 * z * h1 - 2.0 * static_cast<double>(k) * h0;
      h0 = h1;
      h1 = h2;
      mag = std::max(mag, std::abs(h1));
    }
    return {h1, kEps * n * mag, SpecMethod::polynomial};
  }
  const cplx z2 = z * z;
  const cplx pre = std::pow(cplx(2.0), a) * std::sqrt(kPiF);
  const cplx g1 = rgamma(0.5 * (1.0 - a));
  const cplx g2 = rgamma(-0.5 * a);
  cplx t1 = 0.0, t2 = 0.0;
  double est = 0.0;
  SpecMethod m = SpecMethod::series;
  if (g1 != 0.0) {
    const SpecFunResult m1 = kummer_1f1(-0.5 * a, 0.5, z2);
    t1 = pre * m1.value * g1;
    est += std::abs(pre * g1) * m1.est_error;
    m = m1.method;
  }
  if (g2 != 0.0) {
    const SpecFunResult m2 = kummer_1f1(0.5 * (1.0 - a), 1.5, z2);
    t2 = pre * 2.0 * z * m2.value * g2;
    est += std::abs(pre * g2 * 2.0 * z) * m2.est_error;
    if (m == SpecMethod::series) m = m2.method;
  }
  const cplx h = t1 - t2;
  est += 4.0 * kEps * (std::abs(t1) + std::abs(t2));
  // Where H is recessive (Re z > 0) the two terms can cancel badly; there
  // H(a, z) = 2^a U(-a/2; 1/2; z^2) is well conditioned.
  if (est > kAcceptRel * std::abs(h) && z.real() > 0.0) {
    const Partial u = tricomi_u(-0.5 * a, 0.5, z2);
    const cplx p2 = std::pow(cplx(2.0), a);
    const double est_u = std::abs(p2) * u.est;
    if (est_u < est) return {p2 * u.value, est_u, SpecMethod::continuation};
  }
  return {h, est, m};
}

}  // namespace rabi
