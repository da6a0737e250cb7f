#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "gmequiv/experiments.hpp"

using namespace gmequiv;

namespace {

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

const FourierFunction smooth({{0, {0.3, 0}}, {1, {0.5, 0.1}}, {3, {0.1, -0.2}}});

}  // namespace

TEST(Experiments, CommonRandomNumbers) {
  const auto k = presets::ornstein_uhlenbeck(1.0);
  const int n = 32;
  const auto a = simulate_e1(k, smooth, n, 9, E1Variant::original);
  const auto b = simulate_e1(k, smooth, n, 9, E1Variant::cell_averaged);
  for (int i = 1; i <= n; ++i) {
    const double expected = smooth(a.t(i)) - smooth.cell_average(i, n);
    EXPECT_NEAR(a.values[i - 1] - b.values[i - 1], expected, 1e-13);
  }
  EXPECT_EQ(a.values, simulate_e1(k, smooth, n, 9, E1Variant::original).values);
}

TEST(Experiments, ZeroSignalIsScaledNoise) {
  const auto k = presets::brownian_motion();
  const int n = 16;
  const auto xi = simulate_increments(k, n, 4);
  const auto y = simulate_e1(k, FourierFunction{}, n, 4, E1Variant::original);
  for (int i = 0; i < n; ++i) EXPECT_DOUBLE_EQ(y.values[i], std::sqrt(16.0) * xi[i]);
}

TEST(Experiments, PathStartsAtZeroAndCarriesAntiderivative) {
  const auto k = presets::ornstein_uhlenbeck(1.0);
  const int n = 50;
  const auto p = simulate_e2(k, smooth, n, 3);
  EXPECT_EQ(p.values.front(), 0.0);
  EXPECT_EQ(p.grid.size(), 20u * n + 1);
  const auto noise = simulate_e2(k, FourierFunction{}, n, 3);
  for (std::size_t i = 0; i < p.grid.size(); ++i)
    EXPECT_NEAR(p.values[i] - noise.values[i], smooth.antiderivative(p.grid[i]), 1e-14);
  EXPECT_THROW(simulate_e2(k, smooth, n, 3, 20 * n), GridMismatch);
}

TEST(Experiments, DiscreteAndPathNoiseHaveTheSameLaw) {
  const auto k = presets::slepian();
  const int n = 8, draws = 10000, cell = 5;
  std::vector<double> direct(draws), from_path(draws);
  for (int d = 0; d < draws; ++d) {
    direct[d] = simulate_e1(k, FourierFunction{}, n, 1, E1Variant::cell_averaged, "0", d).values[cell];
    from_path[d] = reconstruct_discrete_from_path(simulate_e2(k, FourierFunction{}, n, 2, 8 * n + 1, "0", d), n).values[cell];
  }
  // 1% critical value of the two-sample test.
  EXPECT_LT(ks_statistic(direct, from_path), 1.628 * std::sqrt(2.0 / draws));
}

TEST(Experiments, PartialSumIdentity) {
  const auto k = presets::ornstein_uhlenbeck(1.0);
  const int n = 32;
  const auto path = simulate_e2(k, smooth, n, 6);
  const auto noise = simulate_e2(k, FourierFunction{}, n, 6);
  const auto y = reconstruct_discrete_from_path(path, n);
  double s = 0.0;
  for (int i = 1; i <= n; ++i) {
    s += y.values[i - 1];
    const double t = static_cast<double>(i) / n;
    EXPECT_NEAR(s / n - smooth.antiderivative(t), noise.values[20 * i], 1e-10);
  }
}

TEST(Experiments, KrigingPathAtKnots) {
  const auto k = presets::ornstein_uhlenbeck(1.0);
  const int n = 16, m = 20 * n + 1;
  const auto p = kriging_path_experiment(k, smooth, n, 8, m);
  const auto e2 = simulate_e2(k, smooth, n, 8, m);
  for (int j = 0; j <= n; ++j) EXPECT_NEAR(p.values[20 * j], e2.values[20 * j], 1e-12);
}

TEST(Experiments, KrigingPathUnderBrownianMotionIsLinearSignal) {
  const auto k = presets::brownian_motion();
  const int n = 8, m = 10 * n + 1;
  const auto p = kriging_path_experiment(k, smooth, n, 8, m);
  const auto noise = simulate_e2(k, FourierFunction{}, n, 8, m);
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    const int j = std::max<int>(1, static_cast<int>(std::ceil(p.grid[i] * n - 1e-9)));
    const double a = (j - 1.0) / n, b = static_cast<double>(j) / n;
    const double lin = smooth.antiderivative(a) + (p.grid[i] - a) * n * (smooth.antiderivative(b) - smooth.antiderivative(a));
    EXPECT_NEAR(p.values[i] - noise.values[i], lin, 1e-12);
  }
}

TEST(Experiments, ReconstructionRoundTrip) {
  const auto k = presets::ornstein_uhlenbeck(1.0);
  for (int n : {4, 32, 128}) {
    const auto y = simulate_e1(k, smooth, n, 12, E1Variant::cell_averaged);
    const auto path = kriging_path_from_discrete(k, y, 13, 20 * n + 1);
    const auto back = reconstruct_discrete_from_path(path, n);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(back.values[i], y.values[i], 1e-10) << "n=" << n;
  }
}

TEST(Experiments, KnotIndices) {
  EXPECT_THROW(knot_indices(equispaced_grid(10), 4), GridMismatch);
  const auto idx = knot_indices(equispaced_grid(13), 4);
  EXPECT_EQ(idx, (std::vector<std::size_t>{0, 3, 6, 9, 12}));
}

TEST(Experiments, CovarianceEstimateIndependentOfThreads) {
  const auto grid = std::vector<double>{0.2, 0.5, 1.0};
  setenv("GMEQUIV_THREADS", "1", 1);
  const auto a = empirical_covariance(presets::brownian_motion(), grid, 2500, 1);
  setenv("GMEQUIV_THREADS", "3", 1);
  const auto b = empirical_covariance(presets::brownian_motion(), grid, 2500, 1);
  unsetenv("GMEQUIV_THREADS");
  EXPECT_EQ(a.covariance, b.covariance);
  EXPECT_EQ(a.standard_error, b.standard_error);
}
