#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ginoe {

// Gauss-Legendre rule on the reference interval (-1, 1).
// Nodes are strictly increasing and exactly symmetric about 0 because the
// positive half is computed and mirrored.
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

// Value and derivative of the Legendre polynomial P_m via the three-term
// recurrence; the derivative uses m*(x*P_m - P_{m-1})/(x^2 - 1).
inline std::pair<double, double> legendre_pd(int m, double x) {
  double p0 = 1.0, p1 = x;
  for (int j = 2; j <= m; ++j) {
    double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  if (m == 0) return {1.0, 0.0};
  if (m == 1) return {x, 1.0};
  double d = m * (x * p1 - p0) / (x * x - 1.0);
  return {p1, d};
}

}  // namespace detail

inline QuadratureRule gauss_legendre(int m) {
  if (m < 1 || m > 4096)
    throw std::invalid_argument("gauss_legendre: order must be in [1, 4096]");

  QuadratureRule rule;
  rule.order = m;
  rule.nodes.assign(m, 0.0);
  rule.weights.assign(m, 0.0);

  const double pi = 3.14159265358979323846;
  // Roots come in +/- pairs; k runs over the upper half, with the Chebyshev
  // angle giving an initial guess good enough for global Newton convergence.
  for (int k = 0; k < (m + 1) / 2; ++k) {
    double x = std::cos(pi * (k + 0.75) / (m + 0.5));
    double dx = 1.0;
    for (int it = 0; it < 100 && std::fabs(dx) > 1e-15; ++it) {
      auto [p, d] = detail::legendre_pd(m, x);
      dx = p / d;
      x -= dx;
    }
    if (m % 2 == 1 && k == (m - 1) / 2) x = 0.0;  // middle root is exact
    auto [p, d] = detail::legendre_pd(m, x);
    (void)p;
    double w = 2.0 / ((1.0 - x * x) * d * d);
    // k = 0 is the root closest to -1 after mirroring
    rule.nodes[k] = -std::fabs(x);
    rule.nodes[m - 1 - k] = std::fabs(x);
    rule.weights[k] = w;
    rule.weights[m - 1 - k] = w;
  }
  return rule;
}

// Rules are pure functions of the order; the table just avoids recomputing
// them inside grid sweeps. Map entries have stable addresses.
inline const QuadratureRule& gauss_legendre_cached(int m) {
  static std::map<int, QuadratureRule> table;
  static std::mutex lock;
  std::lock_guard<std::mutex> guard(lock);
  auto it = table.find(m);
  if (it == table.end()) it = table.emplace(m, gauss_legendre(m)).first;
  return it->second;
}

// Nodes and weights affinely mapped to [a, b].
struct MappedRule {
  std::vector<double> x;
  std::vector<double> w;
};

inline MappedRule map_rule(const QuadratureRule& rule, double a, double b) {
  MappedRule out;
  const int m = rule.order;
  out.x.resize(m);
  out.w.resize(m);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < m; ++i) {
    out.x[i] = mid + half * rule.nodes[i];
    out.w[i] = half * rule.weights[i];
  }
  return out;
}

template <class F>
double integrate(F&& f, double a, double b, int m) {
  const MappedRule r = map_rule(gauss_legendre_cached(m), a, b);
  double acc = 0.0;
  for (int i = 0; i < m; ++i) acc += r.w[i] * f(r.x[i]);
  return acc;
}

namespace detail {

template <class F>
double adaptive_step(F& f, double a, double b, double fa, double fm, double fb,
                     double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson with Richardson correction; for integrands whose scale of
// variation is not known in advance.
template <class F>
double adaptive_integrate(F&& f, double a, double b, double tol = 1e-13) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace ginoe
