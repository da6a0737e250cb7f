#pragma once

// Exact Gaussian sampling of Xi on a finite grid.

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gmequiv/errors.hpp"
#include "gmequiv/kernel.hpp"
#include "gmequiv/random.hpp"

namespace gmequiv {

/// m equispaced points 0, 1/(m-1), ..., 1.
inline std::vector<double> equispaced_grid(int m) {
  if (m < 2) throw GridMismatch("grid needs at least two points");
  std::vector<double> g(m);
  for (int i = 0; i < m; ++i) g[i] = static_cast<double>(i) / (m - 1);
  return g;
}

/// Samples (Xi_{t_0}, ..., Xi_{t_m}) on an increasing grid in [0,1].
///
/// With finite q on the grid this is the time change Xi_t = v(t) W_{q(t)} built
/// from independent N(0, q(t_i) - q(t_{i-1})) increments. Otherwise (q(1) = inf
/// for bridge-type kernels) the exact covariance is factored by Cholesky, and
/// points with zero variance are pinned to 0.
class PathSampler {
 public:
  PathSampler(KernelPtr kernel, std::vector<double> grid)
      : kernel_(std::move(kernel)), grid_(std::move(grid)) {
    const std::size_t m = grid_.size();
    q_.resize(m);
    v_.resize(m);
    bool finite = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (i > 0 && !(grid_[i] > grid_[i - 1])) throw GridMismatch("grid must be increasing");
      q_[i] = kernel_->q(grid_[i]);
      v_[i] = kernel_->v(grid_[i]);
      finite = finite && std::isfinite(q_[i]);
    }
    time_change_ = finite;
    if (!time_change_) factor();
  }

  const std::vector<double>& grid() const noexcept { return grid_; }
  const GaussMarkovKernel& kernel() const noexcept { return *kernel_; }
  bool uses_time_change() const noexcept { return time_change_; }

  std::vector<double> sample(RandomStream& rng) const {
    std::vector<double> out(grid_.size(), 0.0);
    if (time_change_) {
      double w = 0.0;
      double q_prev = 0.0;
      for (std::size_t i = 0; i < grid_.size(); ++i) {
        const double dq = q_[i] - q_prev;
        if (dq > 0.0) w += std::sqrt(dq) * rng.normal();
        q_prev = q_[i];
        out[i] = v_[i] * w;
      }
      return out;
    }
    Eigen::VectorXd z(static_cast<Eigen::Index>(active_.size()));
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
    const Eigen::VectorXd x = chol_ * z;
    for (std::size_t a = 0; a < active_.size(); ++a) out[active_[a]] = x[static_cast<Eigen::Index>(a)];
    return out;
  }

  std::vector<double> sample(std::uint64_t seed, std::uint64_t stream) const {
    RandomStream rng(seed, stream);
    return sample(rng);
  }

 private:
  void factor() {
    for (std::size_t i = 0; i < grid_.size(); ++i)
      if (kernel_->covariance(grid_[i], grid_[i]) > 0.0) active_.push_back(i);
    const auto n = static_cast<Eigen::Index>(active_.size());
    Eigen::MatrixXd cov(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b)
        cov(a, b) = kernel_->covariance(grid_[active_[a]], grid_[active_[b]]);
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
      throw SingularCovariance("covariance of kernel '" + kernel_->name() +
                               "' is not positive definite on the grid");
    }
    chol_ = llt.matrixL();
  }

  KernelPtr kernel_;
  std::vector<double> grid_;
  std::vector<double> q_;
  std::vector<double> v_;
  bool time_change_ = true;
  std::vector<std::size_t> active_;
  Eigen::MatrixXd chol_;
};

}  // namespace gmequiv
