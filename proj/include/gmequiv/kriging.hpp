#pragma once

// Kriging interpolation I(t | y) = k(t)^T C^{-1} y through the knots t_j = j/n.
//
// With Xi_t = v(t) W_{q(t)} and Xi_0 = 0, the knot values divided by v(t_j) are
// Brownian motion at the times q(t_j). Hence
//   * C^{-1} = D^{-1} P D^{-1} with D = diag(v(t_j)) and P the tridiagonal
//     precision of (W_{q(t_1)}, ..., W_{q(t_n)}), and
//   * I(t | y) = v(t) times the linear interpolation, in the q-coordinate, of
//     y_j / v(t_j) between neighbouring knots (with the value 0 at t_0 = 0).

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "gmequiv/errors.hpp"
#include "gmequiv/kernel.hpp"
#include "gmequiv/process.hpp"

namespace gmequiv {

class KrigingInterpolator {
 public:
  KrigingInterpolator(KernelPtr kernel, int n) : kernel_(std::move(kernel)), n_(n) {
    if (n < 1) throw Error("Kriging needs n >= 1");
    kernel_->require_v1_nonzero();
    q_.resize(n + 1);
    v_.resize(n + 1);
    q_[0] = kernel_->q(0.0);
    v_[0] = kernel_->v(0.0);
    if (std::abs(q_[0]) > 1e-10) throw KernelDegenerate("Kriging through Xi_0 = 0 needs q(0) = 0");
    for (int j = 1; j <= n; ++j) {
      const double t = knot(j);
      q_[j] = kernel_->q(t);
      v_[j] = kernel_->v(t);
      if (v_[j] == 0.0) throw SingularCovariance("v vanishes at knot " + std::to_string(j));
      if (!(q_[j] > q_[j - 1]) || !std::isfinite(q_[j])) {
        throw SingularCovariance("q does not increase at knot " + std::to_string(j));
      }
    }
  }

  int n() const noexcept { return n_; }
  double knot(int j) const { return static_cast<double>(j) / n_; }
  const GaussMarkovKernel& kernel() const noexcept { return *kernel_; }

  /// Closed form through the time change; O(1) per point.
  double operator()(std::span<const double> y, double t) const {
    check(y);
    if (t <= 0.0) return 0.0;
    int j = static_cast<int>(std::ceil(t * n_));
    j = std::clamp(j, 1, n_);
    while (j > 1 && t <= knot(j - 1)) --j;
    while (j < n_ && t > knot(j)) ++j;
    const double z_prev = j == 1 ? 0.0 : y[j - 2] / v_[j - 1];
    const double z_next = y[j - 1] / v_[j];
    const double q_prev = j == 1 ? q_[0] : q_[j - 1];
    const double lambda = (kernel_->q(t) - q_prev) / (q_[j] - q_prev);
    return kernel_->v(t) * (z_prev + lambda * (z_next - z_prev));
  }

  /// w = C^{-1} y in O(n) from the tridiagonal precision.
  std::vector<double> weights(std::span<const double> y) const {
    check(y);
    std::vector<double> z(n_ + 2, 0.0);
    for (int j = 1; j <= n_; ++j) z[j] = y[j - 1] / v_[j];
    std::vector<double> w(n_);
    for (int j = 1; j <= n_; ++j) {
      double pz = (z[j] - z[j - 1]) / (q_[j] - q_[j - 1]);
      if (j < n_) pz -= (z[j + 1] - z[j]) / (q_[j + 1] - q_[j]);
      w[j - 1] = pz / v_[j];
    }
    return w;
  }

  /// sum_j K(t, t_j) w_j for precomputed weights.
  double from_weights(std::span<const double> w, double t) const {
    double s = 0.0;
    for (int j = 1; j <= n_; ++j) s += kernel_->covariance(t, knot(j)) * w[j - 1];
    return s;
  }

 private:
  void check(std::span<const double> y) const {
    if (static_cast<int>(y.size()) != n_) throw GridMismatch("expected " + std::to_string(n_) + " knot values");
  }

  KernelPtr kernel_;
  int n_;
  std::vector<double> q_;
  std::vector<double> v_;
};

/// k(t)^T C^{-1} y by a dense Cholesky solve; reference implementation for small n.
inline double kriging_dense(const GaussMarkovKernel& k, std::span<const double> y, double t) {
  const auto n = static_cast<Eigen::Index>(y.size());
  Eigen::MatrixXd C(n, n);
  Eigen::VectorXd kt(n);
  Eigen::VectorXd yy(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ti = static_cast<double>(i + 1) / n;
    kt[i] = k.covariance(t, ti);
    yy[i] = y[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) C(i, j) = k.covariance(ti, static_cast<double>(j + 1) / n);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(C);
  if (llt.info() != Eigen::Success) throw SingularCovariance("knot covariance is not positive definite");
  return kt.dot(llt.solve(yy));
}

inline double kriging_interpolate(const KernelPtr& kernel, std::span<const double> y, double t) {
  return KrigingInterpolator(kernel, static_cast<int>(y.size()))(y, t);
}

/// Path R_t = Xi'_t - I(t | Xi'_n) of an independent copy Xi' on `grid`, which must
/// contain every knot j/n. Vanishes at the knots.
inline std::vector<double> kriging_residual_process(const KernelPtr& kernel, int n,
                                                    const std::vector<double>& grid,
                                                    std::uint64_t seed, std::uint64_t stream = 0) {
  KrigingInterpolator interp(kernel, n);
  PathSampler sampler(kernel, grid);
  const auto path = sampler.sample(seed, stream);
  std::vector<double> knots(n);
  std::size_t cursor = 0;
  for (int j = 1; j <= n; ++j) {
    const double t = interp.knot(j);
    while (cursor < grid.size() && grid[cursor] < t) ++cursor;
    if (cursor == grid.size() || grid[cursor] != t) {
      throw GridMismatch("grid is missing knot " + std::to_string(j) + "/" + std::to_string(n));
    }
    knots[j - 1] = path[cursor];
  }
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = path[i] - interp(knots, grid[i]);
  return out;
}

inline std::vector<double> kriging_residual_process(const KernelPtr& kernel, int n,
                                                    std::uint64_t seed, int density = 20) {
  return kriging_residual_process(kernel, n, equispaced_grid(density * n + 1), seed);
}

}  // namespace gmequiv
