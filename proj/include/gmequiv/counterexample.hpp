#pragma once

// Non-equivalence under the Brownian bridge. The functions f_0 = 0 and f_n agree
// at every design point j/n, so the regression experiment cannot tell them apart,
// while the path experiment reads off the integral exactly through
// rho2(Y) = Y_1 - Y_0 because the bridge is pinned at both ends.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gmequiv/errors.hpp"
#include "gmequiv/experiments.hpp"
#include "gmequiv/fourier.hpp"
#include "gmequiv/kernel.hpp"
#include "gmequiv/parallel.hpp"
#include "gmequiv/process.hpp"

namespace gmequiv {

/// Estimate the integral of f; loss 1 unless the action hits it.
struct DecisionProblem {
  double tolerance = 1e-10;

  int loss(const FourierFunction& f, double action) const {
    return std::abs(action - f.antiderivative(1.0)) <= tolerance ? 0 : 1;
  }
};

/// theta_0 = c, theta_{+-n} = -c/2 with c = sqrt(2/3) L n^{-beta}.
inline FourierFunction build_fn(int n, double beta, double L) {
  if (n < 1) throw Error("build_fn needs n >= 1");
  if (!(beta > 0.0) || !(L > 0.0)) throw Error("build_fn needs beta > 0 and L > 0");
  const double c = std::sqrt(2.0 / 3.0) * L * std::pow(static_cast<double>(n), -beta);
  return FourierFunction({{0, Complex(c, 0.0)}, {n, Complex(-c / 2.0, 0.0)}});
}

/// h(1) - h(0).
inline double rho2(const PathSample& path) {
  if (path.grid.size() < 2 || path.grid.front() != 0.0 || path.grid.back() != 1.0) {
    throw GridMissingEndpoints("rho2 needs a path observed at t = 0 and t = 1");
  }
  return path.values.back() - path.values.front();
}

struct Premise {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct IndistinguishabilityReport {
  int n = 0;
  double beta = 0.0;
  double L = 0.0;
  std::uint64_t seed = 0;
  int draws = 0;
  std::vector<Premise> premises;
  std::string conclusion;

  bool all_passed() const {
    for (const auto& p : premises)
      if (!p.passed) return false;
    return true;
  }
};

/// Checks the computable premises of the bridge counterexample for one n.
///
/// Monte Carlo parts: the E2 risk of rho2 under the bridge for f_0 and f_n over
/// `draws` paths, and the variance of rho2 under Brownian motion (f = 0), which
/// must match 1/n within three standard errors.
inline IndistinguishabilityReport indistinguishability_check(int n, double beta, double L,
                                                             std::uint64_t seed = 1, int draws = 2000,
                                                             int grid_density = default_grid_density) {
  IndistinguishabilityReport r{n, beta, L, seed, draws, {}, {}};
  const FourierFunction f0;
  const FourierFunction fn = build_fn(n, beta, L);
  const double c = std::sqrt(2.0 / 3.0) * L * std::pow(static_cast<double>(n), -beta);

  double grid_max = 0.0;
  for (int j = 1; j <= n; ++j) grid_max = std::max(grid_max, std::abs(fn(static_cast<double>(j) / n)));
  r.premises.push_back({"f_n vanishes at every j/n", grid_max <= 1e-12, grid_max, 1e-12,
                        "max_j |f_n(j/n)|"});

  const double integral = fn.antiderivative(1.0);
  r.premises.push_back({"integral of f_n equals sqrt(2/3) L n^-beta", std::abs(integral - c) <= 1e-12,
                        integral, c, "integral over [0,1]"});

  const double norm_sq = fn.sobolev_norm_sq(beta);
  r.premises.push_back({"f_n lies in the Sobolev ellipsoid", norm_sq <= L * L, norm_sq, L * L,
                        "sum (1+|k|)^(2 beta) |theta_k|^2"});

  // E1 means are (f(j/n))_j; the noise law does not depend on f.
  double mean_gap = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double t = static_cast<double>(j) / n;
    mean_gap = std::max(mean_gap, std::abs(fn(t) - f0(t)));
  }
  r.premises.push_back({"E1 mean vectors under f_0 and f_n coincide", mean_gap <= 1e-12, mean_gap, 1e-12,
                        "noise covariances are identical by construction"});

  const double gap = std::abs(fn.antiderivative(1.0) - f0.antiderivative(1.0));
  r.premises.push_back({"target actions differ", gap > 0.0, gap, 0.0, "|integral f_n - integral f_0|"});

  const int grid_size = grid_density * n + 1;
  const DecisionProblem problem;
  const PathSampler bridge(presets::brownian_bridge(), path_grid(n, grid_size));
  std::vector<int> loss0(draws), loss_n(draws);
  std::vector<double> err(draws);
  parallel_for(static_cast<std::size_t>(draws), [&](std::size_t d) {
    const auto p0 = simulate_e2(bridge, f0, n, seed, "f_0", d);
    const auto pn = simulate_e2(bridge, fn, n, seed, "f_n", d);
    loss0[d] = problem.loss(f0, rho2(p0));
    loss_n[d] = problem.loss(fn, rho2(pn));
    err[d] = std::max(std::abs(rho2(p0)), std::abs(rho2(pn) - integral));
  });
  double risk0 = 0.0, risk_n = 0.0, worst = 0.0;
  for (int d = 0; d < draws; ++d) {
    risk0 += loss0[d];
    risk_n += loss_n[d];
    worst = std::max(worst, err[d]);
  }
  risk0 /= draws;
  risk_n /= draws;
  r.premises.push_back({"E2 risk of rho2 under f_0 is zero", risk0 == 0.0, risk0, 0.0,
                        "bridge, " + std::to_string(draws) + " paths"});
  r.premises.push_back({"E2 risk of rho2 under f_n is zero", risk_n == 0.0, risk_n, 0.0,
                        "bridge, " + std::to_string(draws) + " paths"});
  r.premises.push_back({"rho2 recovers the integral on bridge paths", worst <= 1e-10, worst, 1e-10,
                        "max |rho2(Y) - integral f| over paths"});

  const PathSampler bm(presets::brownian_motion(), path_grid(n, grid_size));
  std::vector<double> values(draws);
  parallel_for(static_cast<std::size_t>(draws), [&](std::size_t d) {
    values[d] = rho2(simulate_e2(bm, f0, n, seed, "f_0", d));
  });
  double mean = 0.0;
  for (double x : values) mean += x;
  mean /= draws;
  double var = 0.0;
  for (double x : values) var += (x - mean) * (x - mean);
  var /= draws - 1;
  const double expected = 1.0 / n;
  const double band = 3.0 * expected * std::sqrt(2.0 / (draws - 1));
  r.premises.push_back({"rho2 fails under Brownian motion: Var = 1/n", std::abs(var - expected) <= band, var,
                        expected, "within 3 standard errors (" + std::to_string(band) + ")"});

  r.conclusion =
      "Under the bridge the regression experiment has the same law under f_0 and f_n, so any "
      "rule in it picks the correct integral with probability at most 1/2 under one of them "
      "(whichever of the two acceptance sets has mass >= 1/2 may be taken first without loss "
      "of generality; that step ranges over all rules and is not computed). The path "
      "experiment has zero risk through rho2, hence the deficiency is at least 1/4.";
  return r;
}

}  // namespace gmequiv
