#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "ginoe/rng.hpp"
#include "ginoe/schur.hpp"

using namespace ginoe;
using Catch::Matchers::WithinAbs;

namespace {

Eigen::MatrixXd gaussian_matrix(int n, std::uint64_t seed, std::uint32_t stream) {
  rng::NormalStream g(seed, stream);
  Eigen::MatrixXd a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = g.next();
  return a;
}

std::vector<std::complex<double>> sorted_eigs(
    std::vector<std::complex<double>> ev) {
  std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return ev;
}

// number of real eigenvalues counted from sign changes of det(A - x I) on a
// fine grid, valid because Gaussian matrices have simple well separated
// real spectra
int real_count_by_sign_changes(const Eigen::MatrixXd& a, double lim,
                               double step) {
  const int n = (int)a.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  int count = 0;
  double prev = 0.0;
  bool have_prev = false;
  for (double x = -lim; x <= lim; x += step) {
    const double d = Eigen::PartialPivLU<Eigen::MatrixXd>(a - x * id)
                         .determinant();
    if (have_prev && d * prev < 0.0) ++count;
    if (d != 0.0) {
      prev = d;
      have_prev = true;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("companion matrix with known spectrum") {
  Eigen::MatrixXd a(3, 3);
  a << 6, -11, 6, 1, 0, 0, 0, 1, 0;
  const auto s = schur::real_schur(a);
  REQUIRE(schur::backward_error(a, s) < 1e-13);
  auto ev = sorted_eigs(schur::schur_eigenvalues(s.T));
  REQUIRE_THAT(ev[0].real(), WithinAbs(1.0, 1e-10));
  REQUIRE_THAT(ev[1].real(), WithinAbs(2.0, 1e-10));
  REQUIRE_THAT(ev[2].real(), WithinAbs(3.0, 1e-10));
  for (const auto& e : ev) REQUIRE(e.imag() == 0.0);
}

TEST_CASE("rotation matrix has a purely imaginary pair") {
  Eigen::MatrixXd a(2, 2);
  a << 0, -1, 1, 0;
  const auto s = schur::real_schur(a);
  const auto ev = sorted_eigs(schur::schur_eigenvalues(s.T));
  REQUIRE_THAT(ev[0].real(), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(ev[0].imag(), WithinAbs(-1.0, 1e-14));
  REQUIRE_THAT(ev[1].imag(), WithinAbs(1.0, 1e-14));
  // standardized block: equal diagonal, opposite sign corners
  REQUIRE(s.T(0, 0) == s.T(1, 1));
  REQUIRE(s.T(0, 1) * s.T(1, 0) < 0.0);
}

TEST_CASE("small fixed matrices") {
  {
    Eigen::MatrixXd a(1, 1);
    a << 4.5;
    const auto s = schur::real_schur(a);
    REQUIRE(s.T(0, 0) == 4.5);
    REQUIRE(s.Q(0, 0) == 1.0);
  }
  {
    Eigen::MatrixXd a(2, 2);
    a << 0, 1, 3, 2;
    const auto ev = sorted_eigs(schur::schur_eigenvalues(schur::real_schur(a).T));
    REQUIRE_THAT(ev[0].real(), WithinAbs(-1.0, 1e-13));
    REQUIRE_THAT(ev[1].real(), WithinAbs(3.0, 1e-13));
  }
  {
    Eigen::MatrixXd a(2, 2);
    a << 1, 2, -2, 1;
    const auto ev = sorted_eigs(schur::schur_eigenvalues(schur::real_schur(a).T));
    REQUIRE_THAT(ev[0].imag(), WithinAbs(-2.0, 1e-13));
    REQUIRE_THAT(ev[0].real(), WithinAbs(1.0, 1e-13));
  }
  REQUIRE_THROWS_AS(schur::real_schur(Eigen::MatrixXd(2, 3)),
                    std::invalid_argument);
}

TEST_CASE("backward error and pair structure on random draws") {
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = gaussian_matrix(64, 31337, (std::uint32_t)trial);
    const auto s = schur::real_schur(a);
    REQUIRE(schur::backward_error(a, s) < 1e-10);

    const auto ev = schur::schur_eigenvalues(s.T);
    REQUIRE((int)ev.size() == 64);
    int complex_count = 0;
    double trace_sum = 0.0;
    for (std::size_t i = 0; i < ev.size(); ++i) {
      trace_sum += ev[i].real();
      if (ev[i].imag() != 0.0) {
        ++complex_count;
        // conjugate partner is adjacent by construction
        if (ev[i].imag() > 0.0) {
          REQUIRE(ev[i + 1].real() == ev[i].real());
          REQUIRE(ev[i + 1].imag() == -ev[i].imag());
        }
      }
    }
    REQUIRE(complex_count % 2 == 0);
    REQUIRE(std::fabs(trace_sum - a.trace()) < 1e-9 * a.norm());
  }
}

TEST_CASE("agreement with the symmetric eigensolver") {
  for (int trial = 0; trial < 20; ++trial) {
    const auto b = gaussian_matrix(24, 777, (std::uint32_t)trial);
    const Eigen::MatrixXd a = b + b.transpose();
    const auto s = schur::real_schur(a);
    const auto ev = sorted_eigs(schur::schur_eigenvalues(s.T));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    for (int i = 0; i < 24; ++i) {
      REQUIRE(ev[i].imag() == 0.0);
      REQUIRE_THAT(ev[i].real(), WithinAbs(es.eigenvalues()[i], 1e-10));
    }
  }
}

TEST_CASE("agreement with the general eigensolver") {
  for (int n : {5, 16, 33}) {
    for (int trial = 0; trial < 7; ++trial) {
      const auto a = gaussian_matrix(n, 1234 + n, (std::uint32_t)trial);
      const auto mine = sorted_eigs(schur::schur_eigenvalues(schur::real_schur(a).T));
      Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
      std::vector<std::complex<double>> ref(n);
      for (int i = 0; i < n; ++i) ref[i] = es.eigenvalues()[i];
      const auto sref = sorted_eigs(std::move(ref));
      for (int i = 0; i < n; ++i)
        REQUIRE(std::abs(mine[i] - sref[i]) < 1e-8);
    }
  }
}

TEST_CASE("real eigenvalue count matches the determinant oracle") {
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = gaussian_matrix(12, 90210, (std::uint32_t)trial);
    const auto ev = schur::schur_eigenvalues(schur::real_schur(a).T);
    int mine = 0;
    for (const auto& e : ev)
      if (e.imag() == 0.0) ++mine;
    REQUIRE(mine == real_count_by_sign_changes(a, 8.0, 2e-4));
  }
}
