#pragma once

// The regression experiment E1 (and its cell-averaged variant E1'), the path
// experiment E2, and the Kriging-path intermediate, all on finite grids.
//
// Stream layout for a seed: stream 2d carries the noise of draw d, stream 2d+1
// the independent copy used for Kriging residuals. Both E1 variants read the
// same stream, so for a fixed seed they differ only in the signal.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gmequiv/errors.hpp"
#include "gmequiv/fourier.hpp"
#include "gmequiv/kernel.hpp"
#include "gmequiv/kriging.hpp"
#include "gmequiv/parallel.hpp"
#include "gmequiv/process.hpp"

namespace gmequiv {

enum class E1Variant { original, cell_averaged };

inline const char* to_string(E1Variant v) {
  return v == E1Variant::original ? "original" : "cell_averaged";
}

struct DiscreteSample {
  int n = 0;
  std::vector<double> values;
  E1Variant variant = E1Variant::original;
  std::string kernel;
  std::string function;
  std::uint64_t seed = 0;

  double t(int i) const { return static_cast<double>(i) / n; }
};

struct PathSample {
  std::vector<double> grid;
  std::vector<double> values;
  std::string kernel;
  std::string function;
  std::uint64_t seed = 0;
  int n = 0;  // noise scale 1/sqrt(n)
};

constexpr int default_grid_density = 20;

inline std::uint64_t noise_stream(std::uint64_t draw) { return 2 * draw; }
inline std::uint64_t residual_stream(std::uint64_t draw) { return 2 * draw + 1; }

/// xi_i = Xi_{i/n} - Xi_{(i-1)/n}, i = 1..n, exact Gaussian.
inline std::vector<double> simulate_increments(const KernelPtr& kernel, int n, std::uint64_t seed,
                                               std::uint64_t draw = 0) {
  if (n < 1) throw Error("n must be >= 1");
  PathSampler sampler(kernel, equispaced_grid(n + 1));
  const auto path = sampler.sample(seed, noise_stream(draw));
  std::vector<double> xi(n);
  for (int i = 1; i <= n; ++i) xi[i - 1] = path[i] - path[i - 1];
  return xi;
}

/// Y_i = f(i/n) + sqrt(n) xi_i, or n * integral of f over cell i + sqrt(n) xi_i.
inline DiscreteSample simulate_e1(const KernelPtr& kernel, const FourierFunction& f, int n,
                                  std::uint64_t seed, E1Variant variant,
                                  std::string function_id = "f", std::uint64_t draw = 0) {
  const auto xi = simulate_increments(kernel, n, seed, draw);
  DiscreteSample s{n, std::vector<double>(n), variant, kernel->name(), std::move(function_id), seed};
  const double root_n = std::sqrt(static_cast<double>(n));
  for (int i = 1; i <= n; ++i) {
    const double signal = variant == E1Variant::original ? f(static_cast<double>(i) / n)
                                                         : f.cell_average(i, n);
    s.values[i - 1] = signal + root_n * xi[i - 1];
  }
  return s;
}

/// Checks that (grid_size - 1) is a multiple of n, so the equispaced grid holds every j/n.
inline std::vector<double> path_grid(int n, int grid_size) {
  if (grid_size < n + 1 || (grid_size - 1) % n != 0) {
    throw GridMismatch("grid of " + std::to_string(grid_size) + " points does not contain every j/" +
                       std::to_string(n));
  }
  return equispaced_grid(grid_size);
}

/// Indices of 0, 1/n, ..., 1 in the path grid; throws GridMismatch when one is missing.
inline std::vector<std::size_t> knot_indices(const std::vector<double>& grid, int n) {
  std::vector<std::size_t> idx(n + 1);
  std::size_t cursor = 0;
  for (int j = 0; j <= n; ++j) {
    const double t = static_cast<double>(j) / n;
    while (cursor < grid.size() && grid[cursor] < t - 1e-12) ++cursor;
    if (cursor == grid.size() || std::abs(grid[cursor] - t) > 1e-12) {
      throw GridMismatch("path grid is missing t=" + std::to_string(j) + "/" + std::to_string(n));
    }
    idx[j] = cursor;
  }
  return idx;
}

/// Y_t = F_f(t) + Xi_t / sqrt(n) on an equispaced grid containing every j/n.
/// Pass a sampler built once on path_grid(n, grid_size) to reuse it across draws.
inline PathSample simulate_e2(const PathSampler& sampler, const FourierFunction& f, int n,
                              std::uint64_t seed, std::string function_id = "f",
                              std::uint64_t draw = 0) {
  knot_indices(sampler.grid(), n);
  PathSample p{sampler.grid(), {}, sampler.kernel().name(), std::move(function_id), seed, n};
  const auto xi = sampler.sample(seed, noise_stream(draw));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  p.values.resize(p.grid.size());
  for (std::size_t i = 0; i < p.grid.size(); ++i) p.values[i] = f.antiderivative(p.grid[i]) + scale * xi[i];
  return p;
}

inline PathSample simulate_e2(const KernelPtr& kernel, const FourierFunction& f, int n,
                              std::uint64_t seed, int grid_size, std::string function_id = "f",
                              std::uint64_t draw = 0) {
  return simulate_e2(PathSampler(kernel, path_grid(n, grid_size)), f, n, seed, std::move(function_id),
                     draw);
}

inline PathSample simulate_e2(const KernelPtr& kernel, const FourierFunction& f, int n,
                              std::uint64_t seed) {
  return simulate_e2(kernel, f, n, seed, default_grid_density * n + 1);
}

/// Y'_i = n (Y(t_i) - Y(t_{i-1})).
inline DiscreteSample reconstruct_discrete_from_path(const PathSample& path, int n) {
  const auto idx = knot_indices(path.grid, n);
  DiscreteSample s{n, std::vector<double>(n), E1Variant::cell_averaged, path.kernel, path.function,
                   path.seed};
  for (int i = 1; i <= n; ++i) s.values[i - 1] = n * (path.values[idx[i]] - path.values[idx[i - 1]]);
  return s;
}

/// Ytilde_t = I(t | F_f(t_1..t_n)) + Xi_t / sqrt(n).
inline PathSample kriging_path_experiment(const KernelPtr& kernel, const FourierFunction& f, int n,
                                          std::uint64_t seed, int grid_size,
                                          std::string function_id = "f", std::uint64_t draw = 0) {
  KrigingInterpolator interp(kernel, n);
  PathSample p{path_grid(n, grid_size), {}, kernel->name(), std::move(function_id), seed, n};
  std::vector<double> knots(n);
  for (int j = 1; j <= n; ++j) knots[j - 1] = f.antiderivative(interp.knot(j));
  const auto xi = PathSampler(kernel, p.grid).sample(seed, noise_stream(draw));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  p.values.resize(p.grid.size());
  for (std::size_t i = 0; i < p.grid.size(); ++i) p.values[i] = interp(knots, p.grid[i]) + scale * xi[i];
  return p;
}

/// Builds the Kriging path from E1' data alone:
///   Ytilde_t = ( I(t | S') + sqrt(n) R_t ) / n,   S'_k = Y'_1 + ... + Y'_k,
/// with R an independent Kriging residual drawn from `residual_seed`.
inline PathSample kriging_path_from_discrete(const KernelPtr& kernel, const DiscreteSample& y,
                                             std::uint64_t residual_seed, int grid_size,
                                             std::uint64_t draw = 0) {
  const int n = y.n;
  KrigingInterpolator interp(kernel, n);
  PathSample p{path_grid(n, grid_size), {}, kernel->name(), y.function, residual_seed, n};
  std::vector<double> partial(n);
  double acc = 0.0;
  for (int k = 0; k < n; ++k) partial[k] = acc += y.values[k];
  const auto residual = kriging_residual_process(kernel, n, p.grid, residual_seed, residual_stream(draw));
  const double root_n = std::sqrt(static_cast<double>(n));
  p.values.resize(p.grid.size());
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    p.values[i] = (interp(partial, p.grid[i]) + root_n * residual[i]) / n;
  }
  return p;
}

/// Monte Carlo estimate of Cov(Xi_s, Xi_t) on a grid (the mean is known to be zero),
/// with the standard error of each entry.
struct CovarianceEstimate {
  std::vector<double> grid;
  std::vector<std::vector<double>> covariance;
  std::vector<std::vector<double>> standard_error;
  int draws = 0;
};

inline CovarianceEstimate empirical_covariance(const KernelPtr& kernel, const std::vector<double>& grid,
                                               int draws, std::uint64_t seed) {
  const std::size_t m = grid.size();
  PathSampler sampler(kernel, grid);
  // Per-chunk accumulators keep the result independent of the thread count.
  constexpr int chunk = 1000;
  const int chunks = (draws + chunk - 1) / chunk;
  std::vector<std::vector<double>> sum(chunks, std::vector<double>(m * m, 0.0));
  std::vector<std::vector<double>> sum_sq(chunks, std::vector<double>(m * m, 0.0));
  parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
    const int begin = static_cast<int>(c) * chunk;
    const int end = std::min(draws, begin + chunk);
    for (int d = begin; d < end; ++d) {
      const auto x = sampler.sample(seed, noise_stream(static_cast<std::uint64_t>(d)));
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          const double p = x[a] * x[b];
          sum[c][a * m + b] += p;
          sum_sq[c][a * m + b] += p * p;
        }
    }
  });
  CovarianceEstimate est{grid, std::vector<std::vector<double>>(m, std::vector<double>(m)),
                         std::vector<std::vector<double>>(m, std::vector<double>(m)), draws};
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      double s = 0.0, s2 = 0.0;
      for (int c = 0; c < chunks; ++c) s += sum[c][a * m + b], s2 += sum_sq[c][a * m + b];
      const double mean = s / draws;
      const double var = std::max(0.0, s2 / draws - mean * mean);
      est.covariance[a][b] = mean;
      est.standard_error[a][b] = std::sqrt(var / draws);
    }
  return est;
}

}  // namespace gmequiv
