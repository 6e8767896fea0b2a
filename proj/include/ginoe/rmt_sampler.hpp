#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ginoe/rng.hpp"
#include "ginoe/schur.hpp"

namespace ginoe {
namespace mc {

// Spectrum of one random matrix draw. Realness is a discrete property here:
// real eigenvalues come from 1x1 diagonal blocks of the Schur factor and
// complex pairs from 2x2 blocks, so no imaginary-part threshold is involved.
struct SpectrumSample {
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<double> real_eigs;                    // ascending
  std::vector<std::complex<double>> complex_pairs;  // one entry per pair, im > 0
  double backward_error = 0.0;  // ||A - Q T Q^T||_F / ||A||_F
};

// n x n matrix of iid standard normals; bit-identical across platforms for a
// fixed (n, seed) because the generator is counter-based.
inline Eigen::MatrixXd sample_ginoe(int n, std::uint64_t seed) {
  if (n < 2 || n > 2048)
    throw std::invalid_argument("sample_ginoe: n must be in [2, 2048]");
  rng::NormalStream g(seed, 0);
  Eigen::MatrixXd a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = g.next();
  return a;
}

inline SpectrumSample make_spectrum_sample(const Eigen::MatrixXd& a,
                                           std::uint64_t seed) {
  const auto s = schur::real_schur(a);
  SpectrumSample out;
  out.n = (int)a.rows();
  out.seed = seed;
  out.backward_error = schur::relative_residual(a, s);
  int i = 0;
  while (i < out.n) {
    if (i + 1 < out.n && s.T(i + 1, i) != 0.0) {
      const double re = s.T(i, i);
      const double im = std::sqrt(-s.T(i, i + 1) * s.T(i + 1, i));
      out.complex_pairs.emplace_back(re, im);
      i += 2;
    } else {
      out.real_eigs.push_back(s.T(i, i));
      i += 1;
    }
  }
  std::sort(out.real_eigs.begin(), out.real_eigs.end());
  return out;
}

inline SpectrumSample draw_spectrum(int n, std::uint64_t seed) {
  return make_spectrum_sample(sample_ginoe(n, seed), seed);
}

// max(real_eigs) - sqrt(n); absent when the draw has no real eigenvalue, in
// which case the event {max <= t} is true for every t (max over the empty
// set is -infinity)
inline std::optional<double> scaled_max_real(const SpectrumSample& s) {
  if (s.real_eigs.empty()) return std::nullopt;
  return s.real_eigs.back() - std::sqrt((double)s.n);
}

// gamma_n = ln(n / (2 pi ln^2 n)), the slowly growing rate in the extreme
// value scaling of the spectral radius
inline double radius_scaling_rate(int n) {
  const double ln = std::log((double)n);
  return std::log((double)n / (2.0 * 3.14159265358979323846 * ln * ln));
}

// (max modulus over complex pairs - sqrt(n) - sqrt(gamma_n/4)) * sqrt(4 gamma_n),
// whose law tends to exp(-exp(-t)/2). The rate gamma_n only becomes positive
// near n = 190, so small n is rejected even though the pair list may be fine.
inline double scaled_complex_radius(const SpectrumSample& s) {
  if (s.n < 8)
    throw std::invalid_argument("scaled_complex_radius: n must be at least 8");
  const double gn = radius_scaling_rate(s.n);
  if (!(gn > 0.0))
    throw std::invalid_argument(
        "scaled_complex_radius: scaling rate not positive at this n");
  if (s.complex_pairs.empty())
    throw std::runtime_error("scaled_complex_radius: no complex pairs");
  double r = 0.0;
  for (const auto& z : s.complex_pairs) r = std::max(r, std::abs(z));
  return (r - std::sqrt((double)s.n) - std::sqrt(gn / 4.0)) *
         std::sqrt(4.0 * gn);
}

// Keep each real eigenvalue independently with probability xi. Exploratory:
// whether the thinned maximum follows the xi-deformed limit law is an open
// question, so nothing downstream depends on this.
inline std::vector<double> thin_real_spectrum(const SpectrumSample& s,
                                              double xi, std::uint64_t seed) {
  if (!(xi >= 0.0 && xi <= 1.0))
    throw std::invalid_argument("thin_real_spectrum: xi must be in [0, 1]");
  // stream keyed by the sample's own seed so one thinning seed can be reused
  // across a whole Monte Carlo run without correlating the coins
  rng::UniformStream coins(seed,
                           (std::uint32_t)(s.seed ^ (s.seed >> 32)));
  std::vector<double> kept;
  for (double x : s.real_eigs)
    if (coins.next() <= xi) kept.push_back(x);
  return kept;
}

enum class LawKind { MAX_REAL, COMPLEX_RADIUS };

struct EmpiricalLaw {
  std::vector<double> ts;
  std::vector<int> counts_at_or_below;
  int total = 0;
  LawKind kind = LawKind::MAX_REAL;
};

// counts_at_or_below[i] = #{values <= ts[i]}, with absent values counting as
// below every threshold
inline EmpiricalLaw empirical_cdf(
    const std::vector<std::optional<double>>& values, std::vector<double> ts,
    LawKind kind) {
  if (!std::is_sorted(ts.begin(), ts.end()))
    throw std::invalid_argument("empirical_cdf: thresholds must be sorted");
  EmpiricalLaw law;
  law.total = (int)values.size();
  law.kind = kind;
  law.counts_at_or_below.reserve(ts.size());
  for (double t : ts) {
    int c = 0;
    for (const auto& v : values)
      if (!v.has_value() || *v <= t) ++c;
    law.counts_at_or_below.push_back(c);
  }
  law.ts = std::move(ts);
  return law;
}

// half width of the Wilson score interval for a binomial proportion
inline double wilson_halfwidth(int count, int total, double z = 1.96) {
  if (total <= 0) throw std::invalid_argument("wilson_halfwidth: empty sample");
  const double n = (double)total;
  const double p = (double)count / n;
  const double z2 = z * z;
  return z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) /
         (1.0 + z2 / n);
}

struct CloudPoint {
  double re = 0.0;
  double im = 0.0;
  bool is_real = false;
};

// All eigenvalues of n_samples independent draws, rescaled by 1/sqrt(n); both
// members of each conjugate pair are emitted so the cloud plots symmetrically.
inline std::vector<CloudPoint> circular_law_cloud(int n, int n_samples,
                                                  std::uint64_t seed) {
  if (n_samples < 1)
    throw std::invalid_argument("circular_law_cloud: need at least one sample");
  std::vector<CloudPoint> pts;
  pts.reserve((std::size_t)n * n_samples);
  const double scale = 1.0 / std::sqrt((double)n);
  for (int k = 0; k < n_samples; ++k) {
    const auto s = draw_spectrum(n, seed + (std::uint64_t)k);
    for (double x : s.real_eigs) pts.push_back({x * scale, 0.0, true});
    for (const auto& z : s.complex_pairs) {
      pts.push_back({z.real() * scale, z.imag() * scale, false});
      pts.push_back({z.real() * scale, -z.imag() * scale, false});
    }
  }
  return pts;
}

}  // namespace mc
}  // namespace ginoe
