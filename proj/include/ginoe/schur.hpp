#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ginoe {
namespace schur {

// Real Schur decomposition A = Q T Q^T with Q orthogonal and T quasi upper
// triangular: 1x1 diagonal blocks carry real eigenvalues, standardized 2x2
// blocks (equal diagonal, opposite-sign off-diagonal corners) carry complex
// conjugate pairs.
struct RealSchur {
  Eigen::MatrixXd T;
  Eigen::MatrixXd Q;
  int sweeps = 0;
};

namespace detail {

// Householder reduction to upper Hessenberg form, Q accumulated.
inline void hessenberg(Eigen::MatrixXd& H, Eigen::MatrixXd& Q) {
  const int n = (int)H.rows();
  Eigen::VectorXd v(n);
  for (int k = 0; k + 2 < n; ++k) {
    const int m = n - k - 1;
    double norm2 = 0.0;
    for (int i = 0; i < m; ++i) {
      v[i] = H(k + 1 + i, k);
      norm2 += v[i] * v[i];
    }
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) continue;
    const double alpha = (v[0] >= 0.0) ? -norm : norm;
    v[0] -= alpha;
    const double beta = 1.0 / (norm * (norm + std::fabs(H(k + 1, k))));
    const auto vb = v.head(m);

    H.block(k + 1, k, m, n - k).noalias() -=
        (beta * vb) * (vb.transpose() * H.block(k + 1, k, m, n - k));
    H.block(0, k + 1, n, m).noalias() -=
        (H.block(0, k + 1, n, m) * vb) * (beta * vb).transpose();
    Q.block(0, k + 1, n, m).noalias() -=
        (Q.block(0, k + 1, n, m) * vb) * (beta * vb).transpose();

    H(k + 1, k) = alpha;
    for (int i = 2; i <= m; ++i) H(k + i, k) = 0.0;
  }
}

// Rotate the 2x2 block at (i, i) into standard form, updating the full rows
// and columns of T plus the corresponding columns of Q. Blocks with real
// eigenvalues are split into two 1x1 blocks.
inline void standardize_block(Eigen::MatrixXd& T, Eigen::MatrixXd& Q, int i) {
  const int n = (int)T.rows();
  const double a = T(i, i), b = T(i, i + 1);
  const double c = T(i + 1, i), d = T(i + 1, i + 1);
  if (c == 0.0) return;

  double cs, sn;
  const double half = 0.5 * (a - d);
  const double disc = half * half + b * c;
  if (disc >= 0.0) {
    // real pair: first rotation column is an eigenvector, chosen so the
    // eigenvalue shift d - lambda adds rather than cancels
    const double sq = std::sqrt(disc);
    const double v0 = half + ((half >= 0.0) ? sq : -sq);
    const double v1 = c;
    const double h = std::hypot(v0, v1);
    cs = v0 / h;
    sn = v1 / h;
  } else {
    // complex pair: equalize the diagonal
    const double theta = 0.5 * std::atan2(d - a, b + c);
    cs = std::cos(theta);
    sn = std::sin(theta);
  }

  for (int j = 0; j < n; ++j) {  // rows i, i+1 from the left
    const double t0 = T(i, j), t1 = T(i + 1, j);
    T(i, j) = cs * t0 + sn * t1;
    T(i + 1, j) = -sn * t0 + cs * t1;
  }
  for (int r = 0; r < n; ++r) {  // columns i, i+1 from the right
    const double t0 = T(r, i), t1 = T(r, i + 1);
    T(r, i) = cs * t0 + sn * t1;
    T(r, i + 1) = -sn * t0 + cs * t1;
    const double q0 = Q(r, i), q1 = Q(r, i + 1);
    Q(r, i) = cs * q0 + sn * q1;
    Q(r, i + 1) = -sn * q0 + cs * q1;
  }

  if (disc >= 0.0) {
    T(i + 1, i) = 0.0;
  } else {
    const double mean = 0.5 * (T(i, i) + T(i + 1, i + 1));
    T(i, i) = mean;
    T(i + 1, i + 1) = mean;
  }
}

}  // namespace detail

inline RealSchur real_schur(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols() || A.rows() < 1)
    throw std::invalid_argument("real_schur: matrix must be square");
  const int n = (int)A.rows();
  RealSchur s;
  s.T = A;
  s.Q = Eigen::MatrixXd::Identity(n, n);
  if (n == 1) return s;

  Eigen::MatrixXd& H = s.T;
  Eigen::MatrixXd& Q = s.Q;
  detail::hessenberg(H, Q);

  const double eps = std::numeric_limits<double>::epsilon();
  const double hnorm = H.cwiseAbs().colwise().sum().maxCoeff();
  const int max_sweeps = 30 * n;
  int nn = n - 1;          // bottom row of the active block
  int stalled = 0;          // sweeps since the last deflation

  while (nn > 0) {
    // find the top of the irreducible block ending at nn
    int l = nn;
    while (l > 0) {
      double tst = std::fabs(H(l - 1, l - 1)) + std::fabs(H(l, l));
      if (tst == 0.0) tst = hnorm;
      if (std::fabs(H(l, l - 1)) <= eps * tst) {
        H(l, l - 1) = 0.0;
        break;
      }
      --l;
    }

    if (l == nn) {
      nn -= 1;
      stalled = 0;
      continue;
    }
    if (l == nn - 1) {
      detail::standardize_block(H, Q, l);
      nn -= 2;
      stalled = 0;
      continue;
    }

    if (s.sweeps >= max_sweeps)
      throw std::runtime_error("real_schur: QR iteration failed to converge");
    ++s.sweeps;
    ++stalled;

    // double shift from the trailing 2x2, or an ad hoc pair when stalled
    double tr, det;
    if (stalled > 0 && stalled % 10 == 0) {
      const double sx =
          std::fabs(H(nn, nn - 1)) + std::fabs(H(nn - 1, nn - 2));
      const double h11 = 0.75 * sx + H(nn, nn);
      tr = 2.0 * h11;
      det = h11 * h11 + 0.4375 * sx * sx;
    } else {
      tr = H(nn - 1, nn - 1) + H(nn, nn);
      det = H(nn - 1, nn - 1) * H(nn, nn) - H(nn - 1, nn) * H(nn, nn - 1);
    }

    // first column of (H - a)(H - b) restricted to the top of the block
    double x = H(l, l) * H(l, l) + H(l, l + 1) * H(l + 1, l) -
               tr * H(l, l) + det;
    double y = H(l + 1, l) * (H(l, l) + H(l + 1, l + 1) - tr);
    double z = H(l + 1, l) * H(l + 2, l + 1);

    for (int k = l; k < nn; ++k) {
      const int nr = std::min(3, nn - k + 1);
      double v0, v1, v2;
      if (k == l) {
        v0 = x; v1 = y; v2 = (nr == 3) ? z : 0.0;
      } else {
        v0 = H(k, k - 1);
        v1 = H(k + 1, k - 1);
        v2 = (nr == 3) ? H(k + 2, k - 1) : 0.0;
      }
      const double norm = std::sqrt(v0 * v0 + v1 * v1 + v2 * v2);
      if (norm == 0.0) continue;
      const double betav = (v0 >= 0.0) ? -norm : norm;
      const double tau = (betav - v0) / betav;
      const double inv = 1.0 / (v0 - betav);
      const double u1 = v1 * inv;
      const double u2 = (nr == 3) ? v2 * inv : 0.0;

      if (k > l) {
        H(k, k - 1) = betav;
        H(k + 1, k - 1) = 0.0;
        if (nr == 3) H(k + 2, k - 1) = 0.0;
      }

      for (int j = k; j < n; ++j) {
        double sum = H(k, j) + u1 * H(k + 1, j);
        if (nr == 3) sum += u2 * H(k + 2, j);
        sum *= tau;
        H(k, j) -= sum;
        H(k + 1, j) -= sum * u1;
        if (nr == 3) H(k + 2, j) -= sum * u2;
      }
      const int rmax = std::min(k + nr, nn);
      for (int r = 0; r <= rmax; ++r) {
        double sum = H(r, k) + u1 * H(r, k + 1);
        if (nr == 3) sum += u2 * H(r, k + 2);
        sum *= tau;
        H(r, k) -= sum;
        H(r, k + 1) -= sum * u1;
        if (nr == 3) H(r, k + 2) -= sum * u2;
      }
      for (int r = 0; r < n; ++r) {
        double sum = Q(r, k) + u1 * Q(r, k + 1);
        if (nr == 3) sum += u2 * Q(r, k + 2);
        sum *= tau;
        Q(r, k) -= sum;
        Q(r, k + 1) -= sum * u1;
        if (nr == 3) Q(r, k + 2) -= sum * u2;
      }
    }
  }

  return s;
}

// Eigenvalues read off the quasi triangular factor.
inline std::vector<std::complex<double>> schur_eigenvalues(
    const Eigen::MatrixXd& T) {
  const int n = (int)T.rows();
  std::vector<std::complex<double>> ev;
  ev.reserve(n);
  int i = 0;
  while (i < n) {
    if (i + 1 < n && T(i + 1, i) != 0.0) {
      const double re = T(i, i);
      const double im = std::sqrt(-T(i, i + 1) * T(i + 1, i));
      ev.emplace_back(re, im);
      ev.emplace_back(re, -im);
      i += 2;
    } else {
      ev.emplace_back(T(i, i), 0.0);
      i += 1;
    }
  }
  return ev;
}

// ||A - Q T Q^T||_F / ||A||_F
inline double relative_residual(const Eigen::MatrixXd& A, const RealSchur& s) {
  const double anorm = A.norm();
  const double resid = (A - s.Q * s.T * s.Q.transpose()).norm();
  return resid / (anorm > 0.0 ? anorm : 1.0);
}

// ||Q^T Q - I||_F
inline double orthogonality_defect(const RealSchur& s) {
  const int n = (int)s.Q.rows();
  return (s.Q.transpose() * s.Q - Eigen::MatrixXd::Identity(n, n)).norm();
}

// the larger of the residual and the orthogonality defect; a value near
// machine epsilon times a modest factor certifies the factorization
inline double backward_error(const Eigen::MatrixXd& A, const RealSchur& s) {
  return std::max(relative_residual(A, s), orthogonality_defect(s));
}

}  // namespace schur
}  // namespace ginoe
