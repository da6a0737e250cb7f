#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "gmequiv/errors.hpp"

namespace gmequiv {

/// Nodes and weights of an N-point Gauss-Legendre rule on [-1, 1].
template <int N>
struct GaussLegendre {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};

  GaussLegendre() {
    for (int i = 0; i < N; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= N; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = N * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }

  static const GaussLegendre& instance() {
    static const GaussLegendre rule;
    return rule;
  }
};

/// 16-point Gauss-Legendre over [a, b].
template <typename F>
double gauss_legendre_16(F&& fn, double a, double b) {
  const auto& rule = GaussLegendre<16>::instance();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (int i = 0; i < 16; ++i) s += rule.weights[i] * fn(mid + half * rule.nodes[i]);
  return half * s;
}

/// Composite 16-point rule over [a, b], doubling the panel count until the relative
/// change drops below `rel_tol` or `max_levels` doublings are spent.
struct QuadratureResult {
  double value = 0.0;
  double relative_change = 0.0;
  int panels = 0;
  bool converged = false;
};

template <typename F>
QuadratureResult integrate(F&& fn, double a, double b, double rel_tol = 1e-9, int max_levels = 6,
                           double abs_floor = 1e-300) {
  QuadratureResult r;
  int panels = 1;
  double prev = gauss_legendre_16(fn, a, b);
  for (int level = 1; level <= max_levels; ++level) {
    panels *= 2;
    const double h = (b - a) / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) s += gauss_legendre_16(fn, a + p * h, a + (p + 1) * h);
    const double change = std::abs(s - prev);
    r.value = s;
    r.panels = panels;
    r.relative_change = change / std::max(std::abs(s), abs_floor);
    if (change <= rel_tol * std::abs(s) || change <= abs_floor) {
      r.converged = true;
      return r;
    }
    prev = s;
  }
  return r;
}

/// As `integrate`, but throws QuadratureFailure on non-convergence.
template <typename F>
double integrate_or_throw(F&& fn, double a, double b, double rel_tol = 1e-9, int max_levels = 6,
                          double abs_floor = 1e-300) {
  const auto r = integrate(fn, a, b, rel_tol, max_levels, abs_floor);
  if (!r.converged) throw QuadratureFailure("composite Gauss-Legendre did not converge", r.relative_change);
  return r.value;
}

}  // namespace gmequiv
