#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ginoe/specfun.hpp"
#include "oracles.hpp"

using ginoe::gauss_legendre;
using ginoe::sf::polylog_3_2;
namespace sf = ginoe::sf;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("erfc reference points") {
  REQUIRE(sf::erfc(0.0) == 1.0);
  REQUIRE_THAT(sf::erfc(-10.0), WithinAbs(2.0, 1e-14));
  // values pinned against a 40-digit computation
  REQUIRE_THAT(sf::erfc(0.3), WithinRel(0.67137324054087258381, 1e-14));
  REQUIRE_THAT(sf::erfc(0.5), WithinRel(0.47950012218695346232, 1e-14));
  REQUIRE_THAT(sf::erfc(1.0), WithinRel(0.15729920705028513066, 1e-14));
  REQUIRE_THAT(sf::erfc(2.0), WithinRel(0.0046777349810472658379, 1e-14));
  REQUIRE_THAT(sf::erfc(5.0), WithinRel(1.5374597944280348502e-12, 1e-14));
  REQUIRE_THAT(sf::erfc(10.0), WithinRel(2.088487583762544757e-45, 1e-14));
  REQUIRE_THAT(sf::erfc(20.0), WithinRel(5.3958656116079009289e-176, 1e-14));
  REQUIRE_THAT(sf::erfc(26.5), WithinRel(2.2109076642637342759e-307, 1e-13));
  REQUIRE_THAT(sf::erfc(-0.7), WithinRel(1.6778011938374184423, 1e-14));
}

TEST_CASE("erfc matches quadrature of the Gaussian tail") {
  auto gauss = [](double s) { return std::exp(-s * s); };
  const double oracle = 2.0 / ginoe::sf::sqrt_pi * oracles::integrate(gauss, 1.0, 40.0, 1e-16);
  REQUIRE_THAT(sf::erfc(1.0), WithinAbs(oracle, 1e-13));
}

TEST_CASE("erfc reflection is exact") {
  for (double x : {0.1, 0.3, 0.9, 1.7, 4.0}) {
    REQUIRE(sf::erfc(-x) == 2.0 - sf::erfc(x));
  }
}

TEST_CASE("erfcx agrees with erfc where both are representable") {
  for (double x : {1.5, 3.0, 8.0, 15.0}) {
    REQUIRE_THAT(ginoe::sf::erfcx(x) * std::exp(-x * x), WithinRel(sf::erfc(x), 1e-13));
  }
}

TEST_CASE("polylog at the endpoints") {
  REQUIRE(polylog_3_2(0.0) == 0.0);
  REQUIRE_THAT(polylog_3_2(1.0), WithinAbs(2.612375348685488, 1e-12));
  REQUIRE_THROWS_AS(polylog_3_2(-0.1), std::domain_error);
  REQUIRE_THROWS_AS(polylog_3_2(1.1), std::domain_error);
}

TEST_CASE("polylog against a ten-million-term partial sum") {
  // At gamma = 0.5 the partial sum is fully converged long before 1e7 terms,
  // so the brute-force value is the true one.
  double brute = 0.0;
  double gk = 1.0;
  for (long k = 1; k <= 10000000; ++k) {
    gk *= 0.5;
    if (gk == 0.0) break;
    brute += gk / (std::sqrt(double(k)) * k);
  }
  REQUIRE_THAT(polylog_3_2(0.5), WithinAbs(brute, 1e-12));
}

TEST_CASE("polylog pinned values and branch agreement near 1") {
  REQUIRE_THAT(polylog_3_2(0.25), WithinAbs(0.27570050864482282272, 1e-13));
  REQUIRE_THAT(polylog_3_2(0.9), WithinAbs(1.6144385285663397256, 1e-13));
  // 0.999 sums the series directly, 0.9999 goes through the expansion about
  // the singularity; both must hit the reference digits.
  REQUIRE_THAT(polylog_3_2(0.999), WithinAbs(2.5017084653413556287, 1e-12));
  REQUIRE_THAT(polylog_3_2(0.9999), WithinAbs(2.5770714271060568112, 1e-12));
}

TEST_CASE("polylog is nondecreasing and convex on a grid") {
  double prev = 0.0, prev_diff = 0.0;
  for (int i = 1; i <= 40; ++i) {
    const double v = polylog_3_2(i / 40.0);
    const double diff = v - prev;
    REQUIRE(v >= prev);
    if (i > 1) REQUIRE(diff >= prev_diff - 1e-12);
    prev = v;
    prev_diff = diff;
  }
}

TEST_CASE("gauss_legendre smallest rules") {
  const auto r1 = gauss_legendre(1);
  REQUIRE(r1.nodes[0] == 0.0);
  REQUIRE(r1.weights[0] == 2.0);

  const auto r2 = gauss_legendre(2);
  REQUIRE_THAT(r2.nodes[1], WithinAbs(0.57735026918962576451, 1e-15));
  REQUIRE(r2.nodes[0] == -r2.nodes[1]);
  REQUIRE_THAT(r2.weights[0], WithinAbs(1.0, 1e-15));
  REQUIRE_THAT(r2.weights[1], WithinAbs(1.0, 1e-15));
}

TEST_CASE("gauss_legendre rejects out-of-range orders") {
  REQUIRE_THROWS_AS(gauss_legendre(0), std::invalid_argument);
  REQUIRE_THROWS_AS(gauss_legendre(4097), std::invalid_argument);
}

TEST_CASE("gauss_legendre weight sum, symmetry, ordering") {
  for (int m : {3, 10, 50, 137}) {
    const auto r = gauss_legendre(m);
    double wsum = 0.0;
    for (int i = 0; i < m; ++i) {
      wsum += r.weights[i];
      REQUIRE(r.weights[i] > 0.0);
      REQUIRE(r.nodes[i] == -r.nodes[m - 1 - i]);  // exact mirroring
      if (i > 0) REQUIRE(r.nodes[i] > r.nodes[i - 1]);
    }
    REQUIRE_THAT(wsum, WithinAbs(2.0, 1e-14));
  }
}

TEST_CASE("gauss_legendre integrates monomials exactly") {
  const auto r50 = gauss_legendre(50);
  double v = 0.0;
  for (int i = 0; i < 50; ++i) v += r50.weights[i] * std::pow(r50.nodes[i], 8);
  REQUIRE_THAT(v, WithinAbs(2.0 / 9.0, 1e-15));

  for (int m = 2; m <= 64; m += 2) {
    const auto r = gauss_legendre(m);
    for (int k = 0; k <= 2 * m - 1; ++k) {
      double acc = 0.0;
      for (int i = 0; i < m; ++i) acc += r.weights[i] * std::pow(r.nodes[i], k);
      const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
      REQUIRE_THAT(acc, WithinAbs(exact, 1e-13));
    }
  }
}

TEST_CASE("gaussian density and cumulative") {
  REQUIRE_THAT(sf::gaussian_g(0.0), WithinRel(0.56418958354775628695, 1e-15));
  REQUIRE(sf::gaussian_G(0.0) == 0.5);
  REQUIRE_THAT(sf::gaussian_G(2.0),
               WithinAbs(oracles::integrate(sf::gaussian_g, -40.0, 2.0, 1e-16), 1e-13));

  double prev = sf::gaussian_G(-8.0);
  for (double x = -7.5; x <= 8.0; x += 0.5) {
    const double v = sf::gaussian_G(x);
    REQUIRE(v >= prev);
    REQUIRE_THAT(sf::gaussian_G(x) + sf::gaussian_G(-x), WithinAbs(1.0, 1e-14));
    prev = v;
  }
}
