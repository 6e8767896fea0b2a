// Prints a small reference table of the limiting distribution of the largest
// real eigenvalue, F(t; gamma), for a few thinning parameters, followed by
// the summary statistics at full coupling.

#include <cstdio>

#include "ginoe/moments.hpp"

using namespace ginoe;

int main() {
  const double gammas[] = {0.25, 0.5, 1.0};

  std::printf("%8s", "t");
  for (double g : gammas) std::printf("   F(t;%.2f)", g);
  std::printf("\n");

  for (double t = -6.0; t <= 4.0 + 1e-12; t += 0.5) {
    std::printf("%8.2f", t);
    for (double g : gammas) std::printf("%12.8f", gapdist::cdf(t, g).F);
    std::printf("\n");
  }

  const auto m = gapdist::moments(1.0);
  std::printf("\nfull coupling summary: mean %.5f  variance %.5f  "
              "skewness %.5f  excess kurtosis %.5f\n",
              m.mean, m.variance, m.skewness, m.kurtosis);

  const auto p = tails::estimate_eta0(1.0);
  std::printf("left tail F ~ %.6f * exp(%.6f t), fit window [%g, %g]\n",
              p.eta0, p.eta1, p.fit_window.first, p.fit_window.second);
  return 0;
}
