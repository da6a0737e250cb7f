#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "gmequiv/kernel.hpp"

using namespace gmequiv;

namespace {

std::vector<KernelPtr> regular_presets() {
  return {presets::brownian_motion(), presets::ornstein_uhlenbeck(1.0), presets::slepian()};
}

}  // namespace

TEST(Kernel, PresetQMatchesRatio) {
  for (const auto& k : regular_presets()) {
    for (int i = 0; i <= 100; ++i) {
      const double t = i / 100.0;
      EXPECT_NEAR(k->q(t), k->u(t) / k->v(t), 1e-12 * (1.0 + std::abs(k->q(t)))) << k->name() << " t=" << t;
    }
  }
  const auto b = presets::brownian_bridge();
  for (int i = 0; i < 100; ++i) EXPECT_NEAR(b->q(i / 100.0), b->u(i / 100.0) / b->v(i / 100.0), 1e-10);
  EXPECT_TRUE(std::isinf(b->q(1.0)));
}

TEST(Kernel, AnalyticDerivativesMatchFiniteDifferences) {
  for (const auto& k : regular_presets()) {
    for (int i = 0; i <= 50; ++i) {
      const double t = i / 50.0;
      const RealFunction q = [&](double s) { return k->q(s); };
      const RealFunction v = [&](double s) { return k->v(s); };
      EXPECT_NEAR(k->q_prime(t), finite_difference(q, t), 1e-5 * (1.0 + std::abs(k->q_prime(t)))) << k->name();
      EXPECT_NEAR(k->v_prime(t), finite_difference(v, t), 1e-5) << k->name();
    }
  }
}

TEST(Kernel, CovarianceIsTriangular) {
  const auto k = presets::ornstein_uhlenbeck(1.0);
  EXPECT_DOUBLE_EQ(k->covariance(0.2, 0.7), k->u(0.2) * k->v(0.7));
  EXPECT_DOUBLE_EQ(k->covariance(0.7, 0.2), k->u(0.2) * k->v(0.7));
  EXPECT_DOUBLE_EQ(presets::brownian_motion()->covariance(0.3, 0.8), 0.3);
  EXPECT_DOUBLE_EQ(presets::brownian_bridge()->covariance(0.25, 0.5), 0.125);
}

TEST(Kernel, GramMatrixPositiveSemidefinite) {
  for (const auto& k : {presets::brownian_motion(), presets::ornstein_uhlenbeck(1.0), presets::brownian_bridge(),
                        presets::slepian()}) {
    for (int n : {4, 16, 64}) {
      Eigen::MatrixXd G(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = k->covariance((i + 1.0) / n, (j + 1.0) / n);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
      EXPECT_GT(es.eigenvalues().minCoeff(), -1e-10) << k->name() << " n=" << n;
    }
  }
}

TEST(Kernel, ExpressionKernelMatchesPreset) {
  const auto custom = make_kernel("ou-expr", "exp(t) - exp(-t)", "exp(-t)");
  const auto preset = presets::ornstein_uhlenbeck(1.0);
  for (int i = 0; i <= 20; ++i) {
    const double t = i / 20.0;
    EXPECT_NEAR(custom->q(t), preset->q(t), 1e-12);
    EXPECT_NEAR(custom->q_prime(t), preset->q_prime(t), 1e-5);
  }
  EXPECT_FALSE(custom->analytic_derivatives());
  EXPECT_TRUE(preset->analytic_derivatives());
}

TEST(Kernel, ConditionOnZero) {
  // Stationary OU: U = exp(t), V = exp(-t); conditioning on X_0 = 0 gives the preset.
  const auto k = condition_on_zero("ou-cond", "exp(t)", "exp(-t)");
  const auto preset = presets::ornstein_uhlenbeck(1.0);
  for (int i = 0; i <= 10; ++i) {
    const double t = i / 10.0;
    EXPECT_NEAR(k->u(t), preset->u(t), 1e-14);
    EXPECT_NEAR(k->q(t), preset->q(t), 1e-12);
  }
  EXPECT_THROW(condition_on_zero("bad", "1", "t"), DivisionByZero);
}

TEST(Kernel, RejectsInvalidParts) {
  EXPECT_THROW(make_kernel("neg", "-t", "1"), AssumptionViolation);
  EXPECT_THROW(make_kernel("flat", "t * (1 - t) * (t - 0.5)^2", "1"), AssumptionViolation);
  EXPECT_THROW(make_kernel("decreasing", "1 - t", "1"), AssumptionViolation);
  EXPECT_THROW(presets::ornstein_uhlenbeck(0.0), AssumptionViolation);
}

TEST(Kernel, Presets) {
  EXPECT_EQ(make_preset("ou(2)")->name(), "ou(2)");
  EXPECT_NEAR(make_preset("ou(2)")->q(0.5), std::expm1(2.0), 1e-14);
  EXPECT_EQ(make_preset("ou", 1.0)->name(), "ou(1)");
  EXPECT_THROW(make_preset("nope"), Error);
  EXPECT_THROW(make_preset("ou(x)"), Error);
}

TEST(Kernel, QInverse) {
  for (const auto& k : regular_presets())
    for (double t : {0.0, 0.1, 0.5, 0.93, 1.0}) EXPECT_NEAR(k->q_inverse(k->q(t)), t, 1e-12) << k->name();
}

TEST(Kernel, RequirementsForBridge) {
  const auto b = presets::brownian_bridge();
  EXPECT_THROW(b->require_v1_nonzero(), SingularCovariance);
  EXPECT_THROW(b->require_regular(), KernelDegenerate);
  EXPECT_NO_THROW(presets::slepian()->require_regular());
}

TEST(Validation, RegularPresetsPass) {
  for (const auto& k : regular_presets()) {
    const auto r = validate_assumption(*k);
    EXPECT_TRUE(r.all_passed()) << k->name();
    EXPECT_GT(r.q_prime_min, 0.0);
  }
  const auto r = validate_assumption(*presets::brownian_motion());
  EXPECT_DOUBLE_EQ(r.q_prime_min, 1.0);
  EXPECT_DOUBLE_EQ(r.q_prime_max, 1.0);
}

TEST(Validation, BridgeFailsEndpointConditions) {
  const auto r = validate_assumption(*presets::brownian_bridge());
  EXPECT_FALSE(r.all_passed());
  ASSERT_NE(r.find("v(1) != 0"), nullptr);
  EXPECT_FALSE(r.find("v(1) != 0")->passed);
  EXPECT_FALSE(r.find("inf v > 0")->passed);
  EXPECT_FALSE(r.find("0 < inf q' <= sup q' < inf")->passed);
  EXPECT_TRUE(r.find("q strictly increasing")->passed);
  EXPECT_TRUE(r.find("q(0) = 0")->passed);
}

TEST(Validation, HoelderIndexEstimates) {
  EXPECT_NEAR(estimate_hoelder_index([](double t) { return std::sqrt(t); }, 4097), 0.5, 0.05);
  EXPECT_NEAR(estimate_hoelder_index([](double t) { return std::sin(3 * t); }, 4097), 1.0, 0.05);
}
