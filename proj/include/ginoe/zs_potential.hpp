#pragma once

#include <cmath>
#include <stdexcept>

#include "ginoe/fredholm.hpp"

namespace ginoe {
namespace zs {

// One sample of the purely imaginary scattering potential. The natural
// variable for the resolvent is u = 2x, so y12 stores the resolvent value at
// 2x and the potential itself is im_y = 2 * y12 (the real coefficient of the
// imaginary potential).
struct PotentialSample {
  double x = 0.0;
  double gamma = 1.0;
  double y12 = 0.0;
  double im_y = 0.0;
};

// y12(t, gamma) = sqrt(gamma) * [(1 - gamma T chi_t)^{-1} g](t): solve the
// second-kind equation on [t, |t|+8] and read the Nystrom interpolant off at
// the left endpoint (which is not a quadrature node).
inline double y12(double t, double gamma, int m = 0) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("y12: gamma must be in [0, 1]");
  if (gamma == 0.0) return 0.0;
  const kernels::KernelSpec spec{kernels::KernelKind::T_KERNEL, 0.0};
  const auto sys = fred::build_system(spec, t, gamma, m);
  const double sg = std::sqrt(gamma);
  auto rhs = [sg](double x) { return sg * sf::gaussian_g(x); };
  const auto q = fred::resolvent_apply(sys, rhs);
  return fred::resolvent_eval(sys, q, rhs, t);
}

inline PotentialSample potential_sample(double x, double gamma) {
  PotentialSample s;
  s.x = x;
  s.gamma = gamma;
  s.y12 = y12(2.0 * x, gamma);
  s.im_y = 2.0 * s.y12;
  return s;
}

// The integrands below inherit e^{-x^2} decay from y12, so integrals over
// (t, inf) are truncated at x = 6 where the integrand is under 1e-16.
inline constexpr double integral_cutoff = 6.0;

// mu(t, gamma) = int_t^inf y12(x, gamma) dx, nonnegative.
inline double mu(double t, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("mu: gamma must be in [0, 1]");
  if (gamma == 0.0) return 0.0;
  const double b = integral_cutoff;
  if (t >= b) return 0.0;
  const int m = std::max(50, (int)std::ceil(5.0 * (b - t)));
  return integrate([gamma](double x) { return y12(x, gamma); }, t, b, m);
}

// int_t^inf (x - t) y12(x, gamma)^2 dx; the weight (x - t) shows up when the
// log-determinant is rewritten as a double integral of the squared potential.
inline double weighted_square_integral(double t, double gamma) {
  if (gamma == 0.0) return 0.0;
  const double b = integral_cutoff;
  if (t >= b) return 0.0;
  const int m = std::max(50, (int)std::ceil(5.0 * (b - t)));
  return integrate(
      [t, gamma](double x) {
        const double v = y12(x, gamma);
        return (x - t) * v * v;
      },
      t, b, m);
}

// Both closed-form ingredients in one sweep: the y12 evaluations are by far
// the expensive part (one linear solve each), so the two integrals share them.
struct ClosedFormParts {
  double mu = 0.0;              // int_t^inf y12
  double weighted_square = 0.0; // int_t^inf (x - t) y12^2
};

inline ClosedFormParts closed_form_parts(double t, double gamma) {
  ClosedFormParts parts;
  if (gamma == 0.0 || t >= integral_cutoff) return parts;
  const double b = integral_cutoff;
  const int m = std::max(50, (int)std::ceil(5.0 * (b - t)));
  const MappedRule rule = map_rule(gauss_legendre_cached(m), t, b);
  for (int i = 0; i < m; ++i) {
    const double v = y12(rule.x[i], gamma);
    parts.mu += rule.w[i] * v;
    parts.weighted_square += rule.w[i] * (rule.x[i] - t) * v * v;
  }
  return parts;
}

// Residual of: ln det(1 - gamma T chi_t) = -int_t^inf (x - t) y12(x)^2 dx.
inline double verify_log_det_from_potential(double t, double gamma) {
  const kernels::KernelSpec spec{kernels::KernelKind::T_KERNEL, 0.0};
  const double ld = fred::log_det(fred::build_system(spec, t, gamma));
  return std::fabs(ld + weighted_square_integral(t, gamma));
}

}  // namespace zs
}  // namespace ginoe
