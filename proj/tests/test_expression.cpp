#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gmequiv/expression.hpp"

using namespace gmequiv;

TEST(Expression, EvaluatesArithmetic) {
  EXPECT_DOUBLE_EQ((*parse_expression("1 + 2 * 3"))(0.0), 7.0);
  EXPECT_DOUBLE_EQ((*parse_expression("(1 + 2) * 3"))(0.0), 9.0);
  EXPECT_DOUBLE_EQ((*parse_expression("t / 4"))(2.0), 0.5);
  EXPECT_DOUBLE_EQ((*parse_expression("2 ^ 3 ^ 2"))(0.0), 512.0);
  EXPECT_DOUBLE_EQ((*parse_expression("-t ^ 2"))(3.0), -9.0);
  EXPECT_DOUBLE_EQ((*parse_expression("1e-2 * 100"))(0.0), 1.0);
}

TEST(Expression, EvaluatesFunctions) {
  const double t = 0.3;
  EXPECT_DOUBLE_EQ((*parse_expression("exp(t) - exp(-t)"))(t), std::exp(t) - std::exp(-t));
  EXPECT_DOUBLE_EQ((*parse_expression("sin(t)^2 + cos(t)^2"))(t), std::pow(std::sin(t), 2) + std::pow(std::cos(t), 2));
  EXPECT_DOUBLE_EQ((*parse_expression("sqrt(t) * log(2)"))(t), std::sqrt(t) * std::log(2.0));
}

TEST(Expression, SyntaxErrorsCarryOffset) {
  try {
    parse_expression("1 + * t");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
  EXPECT_THROW(parse_expression("(t + 1"), SyntaxError);
  EXPECT_THROW(parse_expression("t t"), SyntaxError);
  EXPECT_THROW(parse_expression(""), SyntaxError);
  EXPECT_THROW(parse_expression("1."), SyntaxError);
}

TEST(Expression, UnknownIdentifier) {
  try {
    parse_expression("tan(t)");
    FAIL();
  } catch (const UnknownIdentifier& e) {
    EXPECT_EQ(e.name(), "tan");
  }
  EXPECT_THROW(parse_expression("x + 1"), UnknownIdentifier);
}

TEST(Expression, DomainErrors) {
  EXPECT_THROW((*parse_expression("1 / t"))(0.0), EvaluationError);
  EXPECT_THROW((*parse_expression("sqrt(t)"))(-1.0), EvaluationError);
  EXPECT_THROW((*parse_expression("log(t)"))(0.0), EvaluationError);
  EXPECT_THROW((*parse_expression("exp(t)"))(1000.0), EvaluationError);
}

namespace {

std::string random_expression(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 8 : 1);
  std::uniform_real_distribution<double> num(0.0, 5.0);
  switch (pick(rng)) {
    case 0: return "t";
    case 1: return std::to_string(num(rng));
    case 2: return "(" + random_expression(rng, depth - 1) + " + " + random_expression(rng, depth - 1) + ")";
    case 3: return random_expression(rng, depth - 1) + " - " + random_expression(rng, depth - 1);
    case 4: return random_expression(rng, depth - 1) + " * " + random_expression(rng, depth - 1);
    case 5: return "-" + random_expression(rng, depth - 1);
    case 6: return "sin(" + random_expression(rng, depth - 1) + ")";
    case 7: return "exp(" + random_expression(rng, depth - 1) + " / 10)";
    default: return "(" + random_expression(rng, depth - 1) + ") ^ 2";
  }
}

}  // namespace

// to_string then parse gives back the same tree and the same values.
TEST(Expression, RoundTripProperty) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::string src = random_expression(rng, 4);
    const auto e = parse_expression(src);
    const auto back = parse_expression(e->to_string());
    ASSERT_TRUE(*e == *back) << src << " -> " << e->to_string();
    for (double t : {0.0, 0.25, 0.7, 1.0}) {
      double a = 0.0, b = 0.0;
      bool fa = false, fb = false;
      try { a = (*e)(t); } catch (const EvaluationError&) { fa = true; }
      try { b = (*back)(t); } catch (const EvaluationError&) { fb = true; }
      ASSERT_EQ(fa, fb);
      if (!fa) {
        ASSERT_EQ(a, b) << src;
      }
    }
  }
}

TEST(Expression, ToStringIsParenthesized) {
  EXPECT_EQ(parse_expression("1 + 2 * t")->to_string(), "(1 + (2 * t))");
  EXPECT_EQ(parse_expression("-t")->to_string(), "(-t)");
  EXPECT_EQ(parse_expression("exp(t)")->to_string(), "exp(t)");
}
