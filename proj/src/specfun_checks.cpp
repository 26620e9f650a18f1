#include "rabi/specfun_checks.hpp"

#include <cmath>
#include <random>

#include "rabi/specfun.hpp"

namespace rabi {

cplx hermite_h_hypergeometric(cplx a, cplx z) {
  const cplx z2 = z * z;
  const cplx g1 = rgamma(0.5 * (1.0 - a));
  const cplx g2 = rgamma(-0.5 * a);
  cplx h = 0.0;
  if (g1 != 0.0) h += kummer_1f1(-0.5 * a, 0.5, z2).value * g1;
  if (g2 != 0.0) h -= 2.0 * z * kummer_1f1(0.5 * (1.0 - a), 1.5, z2).value * g2;
  return std::pow(cplx(2.0), a) * std::sqrt(3.14159265358979323846) * h;
}

namespace {

// Sum of |c_k x^k| over the monomials of H_n: the scale against which
// rounding in any evaluation of H_n(x) is measured.
double hermite_abs_scale(int n, double x) {
  std::vector<double> c0{1.0}, c1{0.0, 2.0};
  if (n == 0) return 1.0;
  for (int k = 1; k < n; ++k) {
    std::vector<double> c2(static_cast<std::size_t>(k) + 2, 0.0);
    for (std::size_t i = 0; i < c1.size(); ++i) c2[i + 1] += 2.0 * c1[i];
    for (std::size_t i = 0; i < c0.size(); ++i) c2[i] -= 2.0 * k * c0[i];
    c0 = std::move(c1);
    c1 = std::move(c2);
  }
  double s = 0.0, p = 1.0;
  for (double c : c1) {
    s += std::abs(c) * p;
    p *= std::abs(x);
  }
  return s;
}

template <class F>
void run(PropertyCheck& pc, F&& f) {
  try {
    const double d = f();
    if (!std::isfinite(d))
      ++pc.failures_to_evaluate;
    else
      pc.max_deviation = std::max(pc.max_deviation, d);
  } catch (const std::exception&) {
    ++pc.failures_to_evaluate;
  }
  ++pc.samples;
}

}  // namespace

std::vector<PropertyCheck> specfun_property_suite(int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto ra = [&] { return cplx(5.0 * u(rng), 5.0 * u(rng)); };
  auto rb = [&] { return cplx(2.75 + 2.25 * u(rng), 2.0 * u(rng)); };
  auto rz = [&](double rmax) {
    const double r = rmax * std::sqrt(0.5 * (u(rng) + 1.0));
    return std::polar(r, 3.14159265358979323846 * u(rng));
  };

  PropertyCheck at0{"1F1 value at z = 0", 0.0, 1e-8};
  PropertyCheck expo{"1F1(a; a; z) = exp(z)", 0.0, 1e-8};
  PropertyCheck kummer{"Kummer transformation", 0.0, 1e-8};
  PropertyCheck contig{"contiguous relation", 0.0, 1e-8};
  PropertyCheck herm_rec{"Hermite three-term recurrence", 0.0, 1e-8};
  PropertyCheck herm_int{"Hermite integer degree vs polynomial", 0.0, 1e-12};

  for (int i = 0; i < samples; ++i) {
    const cplx a = ra(), b = rb(), z = rz(20.0);
    run(at0, [&] { return std::abs(kummer_1f1(a, b, 0.0).value - 1.0); });
    run(expo, [&] {
      const cplx e = std::exp(z);
      return std::abs(kummer_1f1(b, b, z).value - e) / std::abs(e);
    });
    run(kummer, [&] {
      const cplx m = kummer_1f1(a, b, z).value;
      const cplx t = std::exp(z) * kummer_1f1(b - a, b, -z).value;
      return std::abs(m - t) / (1.0 + std::abs(m));
    });
    run(contig, [&] {
      const cplx t1 = b * kummer_1f1(a, b, z).value;
      const cplx t2 = b * kummer_1f1(a - 1.0, b, z).value;
      const cplx t3 = z * kummer_1f1(a, b + 1.0, z).value;
      return std::abs(t1 - t2 - t3) / (std::abs(t1) + std::abs(t2) + std::abs(t3));
    });
    const cplx ha = ra(), hz = rz(3.0);
    run(herm_rec, [&] {
      const cplx hp = hermite_h(ha + 1.0, hz).value;
      const cplx h0 = 2.0 * hz * hermite_h(ha, hz).value;
      const cplx hm = 2.0 * ha * hermite_h(ha - 1.0, hz).value;
      return std::abs(hp - h0 + hm) / (std::abs(hp) + std::abs(h0) + std::abs(hm));
    });
  }
  for (int n = 0; n <= 20; ++n) {
    for (int k = 0; k <= 40; ++k) {
      const double x = -5.0 + 0.25 * k;
      run(herm_int, [&] {
        const cplx poly = hermite_h(static_cast<double>(n), x).value;
        const cplx hyp = hermite_h_hypergeometric(static_cast<double>(n), x);
        const double diff = std::abs(poly - hyp);
        return diff == 0.0 ? 0.0 : diff / hermite_abs_scale(n, x);
      });
    }
  }
  return {at0, expo, kummer, contig, herm_rec, herm_int};
}

}  // namespace rabi
