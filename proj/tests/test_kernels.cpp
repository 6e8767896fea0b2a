#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ginoe/kernels.hpp"
#include "oracles.hpp"

using namespace ginoe::kernels;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("kernel_T reference values") {
  REQUIRE_THAT(kernel_T(0.0, 0.0), WithinRel(0.19947114020071633897, 1e-14));
  // at x + y = 0 the erfc factor is exactly 1
  REQUIRE_THAT(kernel_T(1.0, -1.0), WithinRel(0.026995483256594025975, 1e-14));
  REQUIRE_THAT(kernel_T(2.0, 3.0), WithinRel(6.9361288532159848594e-8, 1e-13));
}

TEST_CASE("kernel_T matches quadrature of its defining integral") {
  const double pi = 3.14159265358979323846;
  for (auto [x, y] : {std::pair{2.0, 3.0}, {0.0, 0.0}, {-1.5, 0.7}, {-3.0, -2.0}}) {
    auto integrand = [x = x, y = y](double u) {
      return std::exp(-(x + u) * (x + u)) * std::exp(-(y + u) * (y + u));
    };
    const double brute = oracles::integrate(integrand, 0.0, 40.0, 1e-16) / pi;
    REQUIRE_THAT(kernel_T(x, y), WithinAbs(brute, 1e-13));
  }
}

TEST_CASE("kernel_T symmetry and off-diagonal bound") {
  for (double x = -4.0; x <= 4.0; x += 0.7) {
    for (double y = -4.0; y <= 4.0; y += 0.9) {
      REQUIRE(kernel_T(x, y) == kernel_T(y, x));
      const double mid = 0.5 * (x + y);
      REQUIRE(kernel_T(x, y) <= kernel_T(mid, mid) * (1.0 + 1e-15));
      REQUIRE(kernel_T(x, y) > 0.0);
    }
  }
}

TEST_CASE("kernel_T underflow-guarded branch is continuous") {
  // pick x = y so the erfc argument straddles the branch point s = 26
  for (double s : {25.9, 26.1}) {
    const double x = s / std::sqrt(2.0);
    const double direct =
        std::exp(0.0) * ginoe::sf::erfc(s) / (2.0 * ginoe::sf::sqrt_2pi);
    REQUIRE_THAT(kernel_T(x, x), WithinRel(direct, 1e-12));
  }
  // beyond erfc underflow the kernel survives as long as e^{-x^2-y^2} does
  const double far = kernel_T(19.0, 19.0);
  REQUIRE(far > 0.0);
  REQUIRE(far < 1e-300);
  REQUIRE(kernel_T(30.0, 30.0) == 0.0);  // true value below double range
}

TEST_CASE("kernel_S reference values") {
  REQUIRE_THAT(kernel_S(0.0, 0.0), WithinRel(0.28209479177387814347, 1e-14));
  REQUIRE_THAT(kernel_S(1.0, 1.0), WithinRel(0.10377687435514867584, 1e-14));
  for (double a : {0.3, 1.0, 2.5}) {
    REQUIRE(kernel_S(a, -a) == kernel_S(0.0, 0.0));
  }
}

TEST_CASE("kernel_S_shifted values and domain") {
  const double inv_sqrt_pi = 0.56418958354775628695;
  REQUIRE_THAT(kernel_S_shifted(0.0, 0.0, 0.0), WithinRel(inv_sqrt_pi, 1e-14));
  REQUIRE_THAT(kernel_S_shifted(1.0, 2.0, -3.0), WithinRel(inv_sqrt_pi, 1e-14));
  REQUIRE_THROWS_AS(kernel_S_shifted(-0.1, 1.0, 0.0), std::domain_error);
  REQUIRE_THROWS_AS(kernel_S_shifted(1.0, -2.0, 0.0), std::domain_error);
}

TEST_CASE("shifted kernel composes to the translated T kernel") {
  // int_0^inf S_t(x,u) S_t(u,y) du = T(x+t, y+t) on a grid of arguments
  for (double t : {-2.0, 0.5}) {
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        const double x = 0.25 * i, y = 0.25 * j;
        auto integrand = [&](double u) {
          return kernel_S_shifted(x, u, t) * kernel_S_shifted(u, y, t);
        };
        const double brute = oracles::integrate(integrand, 0.0, 30.0, 1e-15);
        REQUIRE_THAT(brute, WithinAbs(kernel_T(x + t, y + t), 1e-12));
      }
    }
  }
}

TEST_CASE("diagonal trace identity") {
  // int_t^inf T(x,x) dx = (1/(2 sqrt(2 pi))) int_t^inf erfc(sqrt(2) x) dx
  for (double t : {-2.0, 0.0, 1.0}) {
    auto diag = [](double x) { return kernel_T(x, x); };
    auto scaled = [](double x) {
      return ginoe::sf::erfc(std::sqrt(2.0) * x) / (2.0 * ginoe::sf::sqrt_2pi);
    };
    const double lhs = oracles::integrate(diag, t, t + 30.0, 1e-15);
    const double rhs = oracles::integrate(scaled, t, t + 30.0, 1e-15);
    REQUIRE_THAT(lhs, WithinAbs(rhs, 1e-12));
  }
}

TEST_CASE("evaluate dispatches on KernelSpec") {
  KernelSpec t{KernelKind::T_KERNEL, 0.0};
  KernelSpec s{KernelKind::S_KERNEL, 0.0};
  KernelSpec sh{KernelKind::S_SHIFTED, -1.0};
  REQUIRE(evaluate(t, 0.4, 0.9) == kernel_T(0.4, 0.9));
  REQUIRE(evaluate(s, 0.4, 0.9) == kernel_S(0.4, 0.9));
  REQUIRE(evaluate(sh, 0.4, 0.9) == kernel_S_shifted(0.4, 0.9, -1.0));
}
