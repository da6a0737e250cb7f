#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gmequiv/fourier.hpp"
#include "gmequiv/quadrature.hpp"

using namespace gmequiv;

constexpr double pi = std::numbers::pi;

TEST(Fourier, CosineAndSine) {
  const auto c = FourierFunction::cosine(3, 2.0);
  const auto s = FourierFunction::sine(2, 0.5);
  for (double t : {0.0, 0.1, 0.37, 0.5, 0.99}) {
    EXPECT_NEAR(c(t), 2.0 * std::cos(2 * pi * 3 * t), 1e-13);
    EXPECT_NEAR(s(t), 0.5 * std::sin(2 * pi * 2 * t), 1e-13);
  }
  EXPECT_EQ(c.cutoff(), 3);
  EXPECT_EQ(c.coefficient(-3), Complex(1.0, 0.0));
}

TEST(Fourier, HermitianCompletionAndViolations) {
  const FourierFunction f({{2, Complex(0.3, 0.4)}});
  EXPECT_EQ(f.coefficient(-2), Complex(0.3, -0.4));
  EXPECT_NO_THROW(FourierFunction({{2, Complex(0.3, 0.4)}, {-2, Complex(0.3, -0.4)}}));
  EXPECT_THROW(FourierFunction({{2, Complex(0.3, 0.4)}, {-2, Complex(0.3, 0.4)}}), HermitianViolation);
  EXPECT_THROW(FourierFunction({{0, Complex(1.0, 1.0)}}), HermitianViolation);
}

TEST(Fourier, AntiderivativeMatchesQuadrature) {
  const FourierFunction f({{0, {0.4, 0}}, {1, {0.2, -0.1}}, {5, {0.05, 0.07}}});
  for (double t : {0.1, 0.33, 0.8, 1.0}) {
    const double q = integrate_or_throw([&](double x) { return f(x); }, 0.0, t, 1e-13);
    EXPECT_NEAR(f.antiderivative(t), q, 1e-13);
  }
  EXPECT_EQ(f.antiderivative(0.0), 0.0);
  EXPECT_NEAR(f.antiderivative(1.0), 0.4, 1e-15);
}

TEST(Fourier, CellAveragesAndDiscretizationError) {
  const FourierFunction f({{0, {0.4, 0}}, {1, {0.2, -0.1}}, {7, {0.05, 0.07}}});
  const int n = 9;
  for (int i = 1; i <= n; ++i) {
    const double a = (i - 1.0) / n, b = static_cast<double>(i) / n;
    const double avg = n * integrate_or_throw([&](double x) { return f(x); }, a, b, 1e-13);
    EXPECT_NEAR(f.cell_average(i, n), avg, 1e-12);
    EXPECT_NEAR(f.discretization_error(i, n), f(b) - avg, 1e-12);
  }
  const auto c = FourierFunction::constant(2.5);
  for (int i = 1; i <= 16; ++i) {
    EXPECT_EQ(c.cell_average(i, 16), 2.5);
    EXPECT_EQ(c.discretization_error(i, 16), 0.0);
  }
}

// Trapezoid on an equispaced grid is exact for trigonometric polynomials of degree < m.
TEST(Fourier, ParsevalByTrapezoid) {
  const FourierFunction f({{0, {0.1, 0}}, {1, {0.3, 0.2}}, {4, {-0.1, 0.05}}, {9, {0.02, 0.0}}});
  const int m = 64;
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += std::pow(f(static_cast<double>(i) / m), 2);
  EXPECT_NEAR(s / m, f.l2_norm_sq(), 1e-8);
}

TEST(Fourier, SobolevNorm) {
  const auto f = FourierFunction::cosine(2, 1.0);
  EXPECT_NEAR(f.sobolev_norm_sq(1.0), 2 * 0.25 * 9.0, 1e-14);
  EXPECT_NEAR(f.l2_norm_sq(), 0.5, 1e-15);
}

TEST(Fourier, TruncationAndTailSplit) {
  const FourierFunction f({{0, {0.4, 0}}, {3, {0.2, -0.1}}, {8, {0.05, 0.07}}});
  const auto low = f.truncated(5), high = f.tail(5);
  EXPECT_EQ(low.cutoff(), 3);
  EXPECT_EQ(high.cutoff(), 8);
  EXPECT_EQ(high.coefficient(0), Complex{});
  EXPECT_TRUE(low + high == f);
  for (double t : {0.0, 0.21, 0.75}) EXPECT_NEAR(low(t) + high(t), f(t), 1e-15);
}

TEST(Fourier, EllipsoidSamplesAreMembers) {
  const auto spec = ClassSpec::sobolev(1.0, 2.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto f = sample_ellipsoid(spec, 32, seed);
    EXPECT_TRUE(spec.contains(f));
    EXPECT_NEAR(f.sobolev_norm_sq(1.0), 0.95 * 4.0, 1e-12);
  }
  EXPECT_TRUE(sample_ellipsoid(spec, 16, 3) == sample_ellipsoid(spec, 16, 3));
  EXPECT_FALSE(sample_ellipsoid(spec, 16, 3) == sample_ellipsoid(spec, 16, 4));
}

TEST(Fourier, ExtremalMembers) {
  const auto spec = ClassSpec::sobolev(0.75, 1.0);
  for (int k : {1, 8, 64}) {
    const auto f = extremal_member(spec, k);
    EXPECT_NEAR(f.sobolev_norm_sq(0.75), 0.5, 1e-14);
    EXPECT_TRUE(spec.contains(f));
  }
}

TEST(Fourier, TheoryRange) {
  EXPECT_TRUE(ClassSpec::sobolev(0.75, 1).within_theory());
  EXPECT_FALSE(ClassSpec::sobolev(0.5, 1).within_theory());
  EXPECT_TRUE(ClassSpec::hoelder(1.0, 1).within_theory());
  EXPECT_FALSE(ClassSpec::hoelder(1.2, 1).within_theory());
}

TEST(Fourier, HoelderConstantOfCosine) {
  const auto spec = ClassSpec::hoelder(1.0, 10.0, 2.0);
  const auto r = hoelder_check(FourierFunction::cosine(1), spec, 10000);
  EXPECT_NEAR(r.hoelder_constant, 2 * pi, 0.02 * 2 * pi);
  EXPECT_NEAR(r.sup_norm, 1.0, 1e-12);
  EXPECT_FALSE(r.refuted);
  EXPECT_TRUE(hoelder_check(FourierFunction::cosine(1), ClassSpec::hoelder(1.0, 5.0), 1000).refuted);
}
