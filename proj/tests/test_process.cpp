#include <gtest/gtest.h>

#include <cmath>

#include "gmequiv/experiments.hpp"
#include "gmequiv/process.hpp"

using namespace gmequiv;

TEST(Process, EquispacedGridContainsKnots) {
  const auto g = equispaced_grid(20 * 48 + 1);
  for (int j = 0; j <= 48; ++j) EXPECT_EQ(g[20 * j], static_cast<double>(j) / 48);
  EXPECT_THROW(equispaced_grid(1), GridMismatch);
}

TEST(Process, SamplerChoosesRoute) {
  EXPECT_TRUE(PathSampler(presets::brownian_motion(), equispaced_grid(11)).uses_time_change());
  EXPECT_TRUE(PathSampler(presets::slepian(), equispaced_grid(11)).uses_time_change());
  EXPECT_FALSE(PathSampler(presets::brownian_bridge(), equispaced_grid(11)).uses_time_change());
  EXPECT_THROW(PathSampler(presets::brownian_motion(), {0.0, 0.5, 0.5}), GridMismatch);
}

TEST(Process, StartsAtZeroAndBridgeIsPinned) {
  for (const auto& k : {presets::brownian_motion(), presets::ornstein_uhlenbeck(1.0), presets::brownian_bridge()}) {
    PathSampler s(k, equispaced_grid(33));
    for (std::uint64_t d = 0; d < 5; ++d) {
      const auto x = s.sample(7, d);
      EXPECT_EQ(x.front(), 0.0) << k->name();
      if (k->name() == "bridge") {
        EXPECT_EQ(x.back(), 0.0);
      }
    }
  }
}

TEST(Process, Reproducible) {
  PathSampler s(presets::slepian(), equispaced_grid(101));
  EXPECT_EQ(s.sample(3, 4), s.sample(3, 4));
  EXPECT_NE(s.sample(3, 4), s.sample(3, 5));
}

TEST(Process, BrownianIncrementsHaveVarianceOneOverN) {
  const int n = 16, draws = 20000;
  double s = 0.0, s2 = 0.0;
  for (int d = 0; d < draws; ++d) {
    const auto xi = simulate_increments(presets::brownian_motion(), n, 11, d);
    for (double x : xi) s += x, s2 += x * x;
  }
  const double m = static_cast<double>(draws) * n;
  const double var = s2 / m - (s / m) * (s / m);
  EXPECT_NEAR(var, 1.0 / n, 3.0 * (1.0 / n) * std::sqrt(2.0 / m));
}

TEST(Process, EmpiricalCovarianceMatchesKernel) {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(i / 10.0);
  for (const auto& k : {presets::ornstein_uhlenbeck(1.0), presets::brownian_bridge()}) {
    const auto est = empirical_covariance(k, grid, 20000, 5);
    for (std::size_t a = 0; a < grid.size(); ++a)
      for (std::size_t b = 0; b < grid.size(); ++b) {
        const double truth = k->covariance(grid[a], grid[b]);
        EXPECT_LE(std::abs(est.covariance[a][b] - truth), 5.0 * est.standard_error[a][b] + 1e-15)
            << k->name() << " (" << a << "," << b << ")";
      }
  }
}
