#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "ginoe/fredholm.hpp"
#include "ginoe/zs_potential.hpp"

namespace ginoe {
namespace gapdist {

// F(t; gamma) is the probability that the largest real eigenvalue, shifted
// by sqrt(n), stays at or below t in the large-n limit; gamma in [0, 1]
// interpolates between the full law (gamma = 1) and no law at all.
//
// Three independent evaluation routes:
//   PRODUCT      F^2 = det(1 - gamma T chi_t) * Gamma(t, gamma)
//   SINGLE_DET   F   = det(1 - S chi_t), valid only at gamma = 1
//   CLOSED_FORM  F^2 = exp(-int (x-t) y12^2) * (cosh mu - sqrt(gamma) sinh mu)
enum class Route { PRODUCT, SINGLE_DET, CLOSED_FORM };

inline const char* route_name(Route r) {
  switch (r) {
    case Route::PRODUCT: return "PRODUCT";
    case Route::SINGLE_DET: return "SINGLE_DET";
    case Route::CLOSED_FORM: return "CLOSED_FORM";
  }
  return "?";
}

struct DistributionPoint {
  double t = 0.0;
  double gamma = 1.0;
  double det_factor = 1.0;    // in (0, 1]
  double gamma_factor = 1.0;  // in (0, 1]
  double F = 1.0;             // in [0, 1]
  Route route = Route::PRODUCT;
};

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;  // excess convention; see moments()
  double gamma = 1.0;
  std::pair<double, double> grid_range{0.0, 0.0};
  bool tail_corrected = false;
};

namespace detail {
inline fred::NystromSystem t_system(double t, double gamma, int m = 0) {
  return fred::build_system({kernels::KernelKind::T_KERNEL, 0.0}, t, gamma, m);
}
}  // namespace detail

// Gamma(t, gamma) = 1 - gamma * int_t^inf G(x) q(x) dx with
// q = (1 - gamma T chi_t)^{-1} g; the quadrature reuses the system's nodes.
inline double gamma_factor_from(const fred::NystromSystem& sys) {
  const auto q = fred::resolvent_apply(sys, sf::gaussian_g);
  double acc = 0.0;
  for (size_t j = 0; j < sys.grid.size(); ++j)
    acc += sys.weights[j] * sf::gaussian_G(sys.grid[j]) * q[j];
  return 1.0 - sys.gamma * acc;
}

inline double gamma_factor(double t, double gamma, int m = 0) {
  if (gamma == 0.0) return 1.0;
  return gamma_factor_from(detail::t_system(t, gamma, m));
}

inline DistributionPoint cdf(double t, double gamma,
                             std::optional<Route> route = std::nullopt,
                             int m = 0) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("cdf: gamma must be in [0, 1]");

  DistributionPoint pt;
  pt.t = t;
  pt.gamma = gamma;
  // The single-determinant form is only available at gamma = 1, where it is
  // also the most accurate route, so it is the default there.
  pt.route = route.value_or(gamma == 1.0 ? Route::SINGLE_DET : Route::PRODUCT);

  switch (pt.route) {
    case Route::PRODUCT: {
      const auto sys = detail::t_system(t, gamma, m);
      pt.det_factor = std::exp(fred::log_det(sys));
      pt.gamma_factor = gamma == 0.0 ? 1.0 : gamma_factor_from(sys);
      pt.F = std::sqrt(pt.det_factor * pt.gamma_factor);
      break;
    }
    case Route::SINGLE_DET: {
      if (gamma != 1.0)
        throw std::invalid_argument("cdf: the single-determinant route requires gamma = 1");
      const auto sys =
          fred::build_system({kernels::KernelKind::S_KERNEL, 0.0}, t, gamma, m);
      pt.F = std::exp(fred::log_det(sys));
      pt.det_factor = pt.F;
      pt.gamma_factor = 1.0;
      break;
    }
    case Route::CLOSED_FORM: {
      const auto parts = zs::closed_form_parts(t, gamma);
      const double sg = std::sqrt(gamma);
      pt.det_factor = std::exp(-parts.weighted_square);
      pt.gamma_factor = std::cosh(parts.mu) - sg * std::sinh(parts.mu);
      pt.F = std::sqrt(pt.det_factor * pt.gamma_factor);
      break;
    }
  }
  return pt;
}

// Density by a five-point central stencil on the cdf; h = 1e-2 balances the
// truncation error h^4 against the ~1e-13 noise floor of F.
inline double pdf(double t, double gamma) {
  const double h = 1e-2;
  const double fm2 = cdf(t - 2.0 * h, gamma).F;
  const double fm1 = cdf(t - h, gamma).F;
  const double fp1 = cdf(t + h, gamma).F;
  const double fp2 = cdf(t + 2.0 * h, gamma).F;
  return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
}

// --- identity checks ----------------------------------------------------

// The distribution admits a second determinant representation after
// translating the single-det kernel to (0, inf): with
// S_t(x,y) = e^{-(x+y+t)^2}/sqrt(pi),
//   d_minus = det(1 - S_t) equals F(t; 1),
//   d_plus  = det(1 + S_t),
//   d_minus = d_plus * (1 - int_0^inf r), r = (1 + S_t)^{-1} S_t(., 0),
// and the product d_minus * d_plus recovers det(1 - T chi_t).
struct FsIdentityReport {
  double t = 0.0;
  double d_minus = 0.0;
  double d_plus = 0.0;
  double bracket = 0.0;
  double resid_rank_one = 0.0;  // |d_minus - d_plus * bracket|
  double resid_product = 0.0;   // |det(1 - T chi_t) * Gamma - d_minus^2|
};

inline FsIdentityReport verify_fs_identities(double t) {
  FsIdentityReport rep;
  rep.t = t;

  const kernels::KernelSpec shifted{kernels::KernelKind::S_SHIFTED, t};
  const auto sys = fred::build_system(shifted, 0.0, 1.0);
  rep.d_minus = std::exp(fred::log_det(sys, 1.0));
  rep.d_plus = std::exp(fred::log_det(sys, -1.0));

  auto rhs_col = [&](double x) { return kernels::kernel_S_shifted(x, 0.0, t); };
  const auto r = fred::resolvent_apply(sys, rhs_col, -1.0);
  double mass = 0.0;
  for (size_t j = 0; j < sys.grid.size(); ++j) mass += sys.weights[j] * r[j];
  rep.bracket = 1.0 - mass;
  rep.resid_rank_one = std::fabs(rep.d_minus - rep.d_plus * rep.bracket);

  const auto tsys = detail::t_system(t, 1.0);
  const double det_T = std::exp(fred::log_det(tsys));
  const double gam = gamma_factor_from(tsys);
  rep.resid_product = std::fabs(det_T * gam - rep.d_minus * rep.d_minus);
  return rep;
}

// Residual of the closed form for the Gamma factor,
// Gamma = cosh(mu) - sqrt(gamma) sinh(mu).
inline double verify_gamma_closed_form(double t, double gamma) {
  const double m = zs::mu(t, gamma);
  const double closed = std::cosh(m) - std::sqrt(gamma) * std::sinh(m);
  return std::fabs(gamma_factor(t, gamma) - closed);
}

// The Gamma factor's derivative structure: with
//   u(t) = 1 - Gamma(t),  A(t) = sqrt(gamma) cosh(mu) - sinh(mu),
// the cumulative resolvent identity gives A as an integral, and
// du/dt = -y12(t) A(t).
struct AbSystemReport {
  double resid_a_integral = 0.0;  // closed-form A vs integrated resolvent
  double resid_du_dt = 0.0;       // finite-difference du/dt vs -y12 * A
};

inline AbSystemReport verify_ab_system(double t, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument("verify_ab_system: gamma must be in (0, 1]");
  AbSystemReport rep;
  const double sg = std::sqrt(gamma);

  const double m = zs::mu(t, gamma);
  const double a_closed = sg * std::cosh(m) - std::sinh(m);

  const auto sys = detail::t_system(t, gamma);
  auto rhs = [sg](double x) { return sg * sf::gaussian_g(x); };
  const auto q = fred::resolvent_apply(sys, rhs);
  const double a_integral = fred::integrate_resolvent_below(sys, q, rhs, t);
  rep.resid_a_integral = std::fabs(a_closed - a_integral);

  const double h = 1e-3;
  const double du =
      (gamma_factor(t - h, gamma) - gamma_factor(t + h, gamma)) / (2.0 * h);
  rep.resid_du_dt = std::fabs(du - (-zs::y12(t, gamma) * a_closed));
  return rep;
}

}  // namespace gapdist
}  // namespace ginoe
