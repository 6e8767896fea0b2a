#pragma once

#include <cmath>
#include <stdexcept>

#include "ginoe/quadrature.hpp"

namespace ginoe {
namespace sf {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double sqrt_pi = 1.7724538509055160273;
inline constexpr double sqrt_2pi = 2.5066282746310005024;
inline constexpr double zeta_3_2 = 2.6123753486854883433;

namespace detail {

// erf(x) = (2x/sqrt(pi)) e^{-x^2} M(1, 3/2, x^2); the confluent series has
// all-positive terms so there is no cancellation. Used for |x| <= 1 where
// it needs about 20 terms.
inline double erf_series(double x) {
  const double z = x * x;
  double term = 1.0, sum = 1.0;
  for (int n = 1; n < 60; ++n) {
    term *= z / (n + 0.5);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return 2.0 * x / sqrt_pi * std::exp(-z) * sum;
}

// Scaled complementary error function e^{x^2} erfc(x) for x > 1 via the
// Laplace continued fraction, evaluated with the modified Lentz scheme.
// Slowest point is x just above 1 (about 90 iterations).
inline double erfcx_cf(double x) {
  double f = x, c = x, d = 0.0;
  for (int n = 1; n <= 300; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (d == 0.0) d = 1e-300;
    c = x + a / c;
    if (c == 0.0) c = 1e-300;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) break;
  }
  return 1.0 / (sqrt_pi * f);
}

}  // namespace detail

// e^{x^2} erfc(x). The kernels use this for large positive arguments where
// erfc alone would underflow; the other branches are for completeness.
inline double erfcx(double x) {
  if (x > 1.0) return detail::erfcx_cf(x);
  if (x >= -1.0) {
    const double erfc_x = (x >= 0.0) ? 1.0 - detail::erf_series(x)
                                     : 1.0 + detail::erf_series(-x);
    return std::exp(x * x) * erfc_x;
  }
  // erfc(x) = 2 - erfc(-x) lifts to 2 e^{x^2} - erfcx(-x), which overflows
  // for x below about -26.6 exactly where the true value does.
  return 2.0 * std::exp(x * x) - detail::erfcx_cf(-x);
}

inline double erfc(double x) {
  if (x < 0.0) return 2.0 - erfc(-x);
  if (x <= 1.0) return 1.0 - detail::erf_series(x);
  return std::exp(-x * x) * detail::erfcx_cf(x);
}

inline double gaussian_g(double x) { return std::exp(-x * x) / sqrt_pi; }

inline double gaussian_G(double x) { return 0.5 * erfc(-x); }

// Li_{3/2}(gamma) = sum_{k>=1} gamma^k k^{-3/2} for gamma in [0, 1].
//
// Away from gamma = 1 the series is summed directly with a geometric tail
// bound. Near gamma = 1 the series converges too slowly, so the expansion
// about the singularity is used instead:
//   Li_{3/2}(e^{-d}) = -2 sqrt(pi d) + sum_{k>=0} zeta(3/2 - k) (-d)^k / k!
// which for d <= 1e-3 reaches full double accuracy with five terms.
inline double polylog_3_2(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::domain_error("polylog_3_2: argument must be in [0, 1]");
  if (gamma == 0.0) return 0.0;

  if (gamma > 0.999) {
    const double d = -std::log(gamma);
    const double zeta_m12 = -0.20788622497735456602;   // zeta(-1/2)
    const double zeta_12 = -1.4603545088095868129;     // zeta(1/2)
    const double zeta_m32 = -0.02548520188983303595;   // zeta(-3/2)
    const double zeta_m52 = 0.0085169287778503305424;  // zeta(-5/2)
    return -2.0 * std::sqrt(pi * d) + zeta_3_2 - zeta_12 * d +
           zeta_m12 * d * d / 2.0 - zeta_m32 * d * d * d / 6.0 +
           zeta_m52 * d * d * d * d / 24.0;
  }

  double sum = 0.0, gk = 1.0;
  for (long k = 1; k < 200000; ++k) {
    gk *= gamma;
    const double term = gk / (std::sqrt(double(k)) * k);
    sum += term;
    // remaining tail is below term * gamma / (1 - gamma)
    if (term * gamma / (1.0 - gamma) < 1e-16) break;
  }
  return sum;
}

}  // namespace sf
}  // namespace ginoe
