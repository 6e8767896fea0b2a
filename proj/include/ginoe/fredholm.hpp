#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ginoe/kernels.hpp"
#include "ginoe/quadrature.hpp"

namespace ginoe {
namespace fred {

// Nystrom discretization of an integral operator on [t, t_max]. The matrix
// is stored in the symmetrized form sqrt(w_i) K(x_i,x_j) sqrt(w_j), which
// shares its spectrum with the plain K(x_i,x_j) w_j form, so determinants
// and resolvent solves can both run off one factorization.
struct NystromSystem {
  kernels::KernelSpec kernel;
  double t = 0.0;
  double t_max = 0.0;
  double gamma = 1.0;
  std::vector<double> grid;
  std::vector<double> weights;
  std::vector<double> sqrt_w;
  Eigen::MatrixXd scaled;
};

// Truncation policy: the kernels decay like Gaussians once x + y (plus any
// shift) is positive, but for negative t the T kernel stays O(1) out to
// x + y ~ 0, so the window has to reach |t|, not just t. Eight extra units
// put the discarded mass far below double precision. Node density is five
// per unit with a floor of 50.
inline NystromSystem build_system(const kernels::KernelSpec& spec, double t,
                                  double gamma, int m = 0) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("build_system: gamma must be in [0, 1]");
  if (!std::isfinite(t))
    throw std::invalid_argument("build_system: t must be finite");

  NystromSystem sys;
  sys.kernel = spec;
  sys.t = t;
  sys.gamma = gamma;
  if (spec.kind == kernels::KernelKind::S_SHIFTED) {
    // domain is (0, inf) shifted by spec.shift; activity ends once
    // x + y + shift outruns the Gaussian
    sys.t_max = t + std::fabs(spec.shift) + 8.0;
  } else {
    sys.t_max = std::fabs(t) + 8.0;
  }
  if (m <= 0) m = std::max(50, (int)std::ceil(5.0 * (sys.t_max - t)));

  const MappedRule rule = map_rule(gauss_legendre_cached(m), t, sys.t_max);
  sys.grid = rule.x;
  sys.weights = rule.w;
  sys.sqrt_w.resize(m);
  for (int i = 0; i < m; ++i) sys.sqrt_w[i] = std::sqrt(rule.w[i]);

  sys.scaled.resize(m, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i <= j; ++i) {
      const double v =
          sys.sqrt_w[i] * kernels::evaluate(spec, sys.grid[i], sys.grid[j]) * sys.sqrt_w[j];
      sys.scaled(i, j) = v;
      sys.scaled(j, i) = v;
    }
  }
  return sys;
}

// ln det(I - coupling * scaled matrix) through a pivoted LU. The operator
// norm is below 1 for the kernels used here, so the determinant is positive;
// a nonpositive determinant can only mean the discretization broke down.
inline double log_det(const NystromSystem& sys, double coupling) {
  const int m = (int)sys.grid.size();
  if (coupling == 0.0) return 0.0;
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m) - coupling * sys.scaled;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  double sign = lu.permutationP().determinant() > 0 ? 1.0 : -1.0;
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    const double d = lu.matrixLU()(i, i);
    if (d < 0.0) sign = -sign;
    if (d == 0.0) throw std::runtime_error("log_det: singular discretization");
    acc += std::log(std::fabs(d));
  }
  if (sign < 0.0) throw std::runtime_error("log_det: negative determinant; discretization broke down");
  return acc;
}

inline double log_det(const NystromSystem& sys) { return log_det(sys, sys.gamma); }

// Solve the discretized second-kind equation
//   q(x_i) = rhs(x_i) + coupling * sum_j w_j K(x_i, x_j) q(x_j).
// Internally substitutes p_i = sqrt(w_i) q_i so the symmetric scaled matrix
// can be reused.
template <class RHS>
std::vector<double> resolvent_apply(const NystromSystem& sys, RHS&& rhs,
                                    double coupling) {
  const int m = (int)sys.grid.size();
  if (coupling == 0.0) {
    std::vector<double> q(m);
    for (int i = 0; i < m; ++i) q[i] = rhs(sys.grid[i]);
    return q;
  }
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) b[i] = sys.sqrt_w[i] * rhs(sys.grid[i]);
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m) - coupling * sys.scaled;
  Eigen::VectorXd p = a.partialPivLu().solve(b);
  std::vector<double> q(m);
  for (int i = 0; i < m; ++i) q[i] = p[i] / sys.sqrt_w[i];
  return q;
}

template <class RHS>
std::vector<double> resolvent_apply(const NystromSystem& sys, RHS&& rhs) {
  return resolvent_apply(sys, rhs, sys.gamma);
}

// Natural Nystrom interpolation of the resolvent at any point, including
// x below the quadrature window (the kernel itself extends the solution).
template <class RHS>
double resolvent_eval(const NystromSystem& sys, const std::vector<double>& q,
                      RHS&& rhs, double x, double coupling) {
  const int m = (int)sys.grid.size();
  double acc = 0.0;
  for (int j = 0; j < m; ++j)
    acc += sys.weights[j] * kernels::evaluate(sys.kernel, x, sys.grid[j]) * q[j];
  return rhs(x) + coupling * acc;
}

template <class RHS>
double resolvent_eval(const NystromSystem& sys, const std::vector<double>& q,
                      RHS&& rhs, double x) {
  return resolvent_eval(sys, q, rhs, x, sys.gamma);
}

// Integral of the interpolated resolvent from -inf up to `upper`. The
// integrand inherits Gaussian decay from the right-hand side and from the
// kernel's first argument, so the window [min(upper - 8, -8), upper]
// captures everything above double precision.
template <class RHS>
double integrate_resolvent_below(const NystromSystem& sys,
                                 const std::vector<double>& q, RHS&& rhs,
                                 double upper) {
  const double lower = std::min(upper - 8.0, -8.0);
  const int m = std::max(50, (int)std::ceil(5.0 * (upper - lower)));
  return integrate(
      [&](double y) { return resolvent_eval(sys, q, rhs, y); }, lower, upper, m);
}

// Residual of the cumulative identity: the resolvent applied to the Gaussian
// cumulative, read off at the window's left endpoint, equals the running
// integral of the resolvent applied to the Gaussian density.
inline double verify_cumulative_identity(double t, double gamma) {
  const kernels::KernelSpec spec{kernels::KernelKind::T_KERNEL, 0.0};
  const auto sys = build_system(spec, t, gamma);
  const double sg = std::sqrt(gamma);
  auto rhs_G = [sg](double x) { return sg * sf::gaussian_G(x); };
  auto rhs_g = [sg](double x) { return sg * sf::gaussian_g(x); };
  const auto qG = resolvent_apply(sys, rhs_G);
  const double lhs = resolvent_eval(sys, qG, rhs_G, t);
  const auto qg = resolvent_apply(sys, rhs_g);
  return std::fabs(lhs - integrate_resolvent_below(sys, qg, rhs_g, t));
}

}  // namespace fred
}  // namespace ginoe
