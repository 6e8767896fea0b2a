// Draws a handful of random matrices, prints their rescaled spectra as CSV
// on stdout and sketches the distribution of real eigenvalues as a terminal
// histogram on stderr. Pipe stdout to a file to plot the circular law; the
// band of real eigenvalues along the axis shows up clearly already at n=256.

#include <cstdio>
#include <cstdlib>

#include "ginoe/rmt_sampler.hpp"

using namespace ginoe;

int main(int argc, char** argv) {
  const int n = (argc > 1) ? std::atoi(argv[1]) : 256;
  const int samples = (argc > 2) ? std::atoi(argv[2]) : 4;
  const std::uint64_t seed = (argc > 3) ? std::strtoull(argv[3], nullptr, 10)
                                        : 20240901;

  const auto pts = mc::circular_law_cloud(n, samples, seed);

  std::printf("re,im,is_real\n");
  int reals = 0;
  int hist[21] = {0};
  for (const auto& p : pts) {
    std::printf("%.10f,%.10f,%d\n", p.re, p.im, p.is_real ? 1 : 0);
    if (p.is_real) {
      ++reals;
      // bin the rescaled real axis [-1.05, 1.05] into 21 buckets
      int b = (int)((p.re + 1.05) / 0.1);
      if (b >= 0 && b < 21) ++hist[b];
    }
  }

  std::fprintf(stderr, "%d samples at n=%d: %zu eigenvalues, %d real\n",
               samples, n, pts.size(), reals);
  std::fprintf(stderr, "real eigenvalue histogram (rescaled by 1/sqrt(n)):\n");
  for (int b = 0; b < 21; ++b) {
    std::fprintf(stderr, "%+5.2f |", -1.05 + 0.1 * b + 0.05);
    for (int i = 0; i < hist[b]; ++i) std::fputc('#', stderr);
    std::fputc('\n', stderr);
  }
  return 0;
}
