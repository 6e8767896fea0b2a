#pragma once

#include <cmath>
#include <stdexcept>

#include "ginoe/specfun.hpp"

namespace ginoe {
namespace kernels {

enum class KernelKind { T_KERNEL, S_KERNEL, S_SHIFTED };

struct KernelSpec {
  KernelKind kind = KernelKind::T_KERNEL;
  double shift = 0.0;  // only S_SHIFTED uses this
};

// T(x,y) = (1/pi) int_0^inf e^{-(x+u)^2} e^{-(y+u)^2} du, evaluated through
// the closed form obtained by completing the square in u:
//   T(x,y) = e^{-(x-y)^2/2} erfc((x+y)/sqrt(2)) / (2 sqrt(2 pi)).
// For (x+y)/sqrt(2) beyond 26 the erfc factor underflows while the true
// product is still representable, so the product is reassembled from the
// scaled function: T = erfcx(s) e^{-x^2-y^2} / (2 sqrt(2 pi)).
inline double kernel_T(double x, double y) {
  const double s = (x + y) / 1.4142135623730950488;
  if (s > 26.0) {
    const double expo = -(x * x + y * y);
    if (expo < -745.0) return 0.0;
    return sf::erfcx(s) * std::exp(expo) / (2.0 * sf::sqrt_2pi);
  }
  const double d = x - y;
  return std::exp(-0.5 * d * d) * sf::erfc(s) / (2.0 * sf::sqrt_2pi);
}

// S(x,y) = e^{-(x+y)^2/4} / (2 sqrt(pi)); depends on x + y only.
inline double kernel_S(double x, double y) {
  const double s = 0.5 * (x + y);
  return std::exp(-s * s) / (2.0 * sf::sqrt_pi);
}

// Shifted kernel on (0, inf)^2: S_t(x,y) = e^{-(x+y+t)^2} / sqrt(pi).
// It is the square root of the translated T in the composition sense:
// int_0^inf S_t(x,u) S_t(u,y) du = T(x+t, y+t).
inline double kernel_S_shifted(double x, double y, double t) {
  if (x < 0.0 || y < 0.0)
    throw std::domain_error("kernel_S_shifted: arguments must be nonnegative");
  const double s = x + y + t;
  return std::exp(-s * s) / sf::sqrt_pi;
}

inline double evaluate(const KernelSpec& spec, double x, double y) {
  switch (spec.kind) {
    case KernelKind::T_KERNEL:
      return kernel_T(x, y);
    case KernelKind::S_KERNEL:
      return kernel_S(x, y);
    case KernelKind::S_SHIFTED:
      return kernel_S_shifted(x, y, spec.shift);
  }
  return 0.0;
}

}  // namespace kernels
}  // namespace ginoe
