#include <gtest/gtest.h>

#include <cmath>

#include "gmequiv/counterexample.hpp"

using namespace gmequiv;

TEST(Counterexample, FnVanishesOnGrid) {
  for (int n : {2, 4, 8, 16, 32, 100}) {
    const auto f = build_fn(n, 1.0, 1.0);
    for (int j = 1; j <= n; ++j) EXPECT_NEAR(f(static_cast<double>(j) / n), 0.0, 1e-12);
    EXPECT_NEAR(f.antiderivative(1.0), std::sqrt(2.0 / 3.0) / n, 1e-15);
  }
}

TEST(Counterexample, SobolevMembership) {
  EXPECT_NEAR(build_fn(8, 1.0, 1.0).sobolev_norm_sq(1.0), (2.0 / 3.0) / 64.0 * (1 + 81.0 / 2), 1e-14);
  for (int n = 2; n <= 64; ++n) EXPECT_LE(build_fn(n, 1.0, 1.0).sobolev_norm_sq(1.0), 1.0) << n;
  EXPECT_GT(build_fn(1, 1.0, 1.0).sobolev_norm_sq(1.0), 1.0);
  EXPECT_THROW(build_fn(0, 1.0, 1.0), Error);
}

TEST(Counterexample, Loss) {
  const DecisionProblem p;
  const auto f = build_fn(4, 1.0, 1.0);
  EXPECT_EQ(p.loss(f, f.antiderivative(1.0)), 0);
  EXPECT_EQ(p.loss(f, 0.0), 1);
  EXPECT_EQ(p.loss(FourierFunction{}, 0.0), 0);
}

TEST(Counterexample, Rho2) {
  PathSample p{{0.0, 0.5, 1.0}, {0.0, 2.0, 3.5}, "bm", "f", 0, 1};
  EXPECT_EQ(rho2(p), 3.5);
  p.grid = {0.0, 0.5, 0.9};
  EXPECT_THROW(rho2(p), GridMissingEndpoints);
}

TEST(Counterexample, BridgePathsRevealTheIntegral) {
  const auto f = build_fn(8, 1.0, 1.0);
  for (std::uint64_t d = 0; d < 10; ++d) {
    const auto p = simulate_e2(presets::brownian_bridge(), f, 8, 4, 81, "f_n", d);
    EXPECT_NEAR(rho2(p), f.antiderivative(1.0), 1e-10);
  }
}

TEST(Counterexample, AllPremisesHold) {
  for (int n : {4, 8}) {
    const auto r = indistinguishability_check(n, 1.0, 1.0, 3, 800);
    for (const auto& p : r.premises) EXPECT_TRUE(p.passed) << p.name << " value=" << p.value;
    EXPECT_TRUE(r.all_passed());
    EXPECT_NE(r.conclusion.find("1/4"), std::string::npos);
  }
}
