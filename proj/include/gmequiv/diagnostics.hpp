#pragma once

// Equivalence diagnostics between the regression experiment and the path
// experiment, and empirical convergence-rate fits.

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "gmequiv/errors.hpp"
#include "gmequiv/fourier.hpp"
#include "gmequiv/kernel.hpp"
#include "gmequiv/parallel.hpp"
#include "gmequiv/rkhs.hpp"

namespace gmequiv {

namespace detail {

// sum_i (f(t_i) - n int_cell f)^2 / [v^2(t_i) (q(t_i) - q(t_{i-1}))]
inline double weighted_discretization_sum(const GaussMarkovKernel& k, const FourierFunction& f, int n) {
  if (n < 1) throw Error("n must be >= 1");
  double sum = 0.0;
  double q_prev = k.q(0.0);
  for (int i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    const double q = k.q(t);
    const double v = k.v(t);
    const double weight = v * v * (q - q_prev);
    if (!(weight > 0.0) || !std::isfinite(weight)) {
      throw DegenerateCell("cell " + std::to_string(i) + " has v^2 (q(t_i) - q(t_{i-1})) = " +
                           std::to_string(weight));
    }
    const double e = f.discretization_error(i, n);
    sum += e * e / weight;
    q_prev = q;
  }
  return sum;
}

}  // namespace detail

/// (1/n) sum_i (f(t_i) - n int_cell f)^2 / [v^2(t_i) (q(t_i) - q(t_{i-1}))].
inline double condition_i_statistic(const GaussMarkovKernel& k, const FourierFunction& f, int n) {
  return detail::weighted_discretization_sum(k, f, n) / n;
}

/// KL(E1, E1') by the chain rule conditioned on the latent path W_{q(t)}, t <= t_{i-1};
/// exactly half of condition (i). Equals the exact KL when v is constant.
inline double kl_e1_vs_e1prime(const GaussMarkovKernel& k, const FourierFunction& f, int n) {
  return detail::weighted_discretization_sum(k, f, n) / (2.0 * n);
}

/// Exact KL(E1, E1') by the chain rule conditioned on the observations Y_1..Y_{i-1}.
/// The drift sqrt(n)(v_i - v_{i-1}) W_{q(t_{i-1})} is then predicted from past
/// observations whose means differ, which shifts the i-th mean gap by
/// -(v_i / v_{i-1} - 1) * sum_{j<i} e_j.
inline double kl_e1_vs_e1prime_exact(const GaussMarkovKernel& k, const FourierFunction& f, int n) {
  if (n < 1) throw Error("n must be >= 1");
  double sum = 0.0, cumulative = 0.0;
  double q_prev = k.q(0.0);
  double v_prev = k.v(0.0);
  for (int i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    const double q = k.q(t);
    const double v = k.v(t);
    const double weight = v * v * (q - q_prev);
    if (!(weight > 0.0) || !std::isfinite(weight)) {
      throw DegenerateCell("cell " + std::to_string(i) + " has v^2 (q(t_i) - q(t_{i-1})) = " +
                           std::to_string(weight));
    }
    const double e = f.discretization_error(i, n);
    const double gap = i == 1 ? e : e - (v / v_prev - 1.0) * cumulative;
    sum += gap * gap / weight;
    cumulative += e;
    q_prev = q;
    v_prev = v;
  }
  return sum / (2.0 * n);
}

/// 1/2 dmu^T C^{-1} dmu with C the exact covariance of sqrt(n) (xi_1, ..., xi_n).
/// Independent dense route for moderate n.
inline double kl_dense_gaussian(const GaussMarkovKernel& k, const FourierFunction& f, int n) {
  const Eigen::Index m = n;
  Eigen::MatrixXd K(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      K(i, j) = k.covariance(static_cast<double>(i + 1) / n, static_cast<double>(j + 1) / n);
  Eigen::MatrixXd D = Eigen::MatrixXd::Identity(m, m);
  for (Eigen::Index i = 1; i < m; ++i) D(i, i - 1) = -1.0;
  const Eigen::MatrixXd C = static_cast<double>(n) * D * K * D.transpose();
  Eigen::VectorXd dmu(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const int cell = static_cast<int>(i) + 1;
    dmu[i] = f(static_cast<double>(cell) / n) - f.cell_average(cell, n);
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(C);
  if (ldlt.info() != Eigen::Success) throw SingularCovariance("noise covariance factorization failed");
  return 0.5 * dmu.dot(ldlt.solve(dmu));
}

/// sqrt(n) times the H(Xi)-distance of F_f to the span of K(., j/n).
inline double condition_ii_statistic(const KernelPtr& k, const FourierFunction& f, int n) {
  return std::sqrt(static_cast<double>(n) * projection_distance(k, f, n));
}

/// Split of the discretization error at cutoff K = n into the low-frequency part A
/// and the tails B (values) and C (cell averages), with the DFT Parseval check on A.
struct AppendixBTerms {
  int n = 0;
  double A_sum = 0.0;            // sum_i A_i^2
  double B_sum = 0.0;            // sum_i B_i^2
  double C_sum = 0.0;            // sum_i C_i^2
  double total = 0.0;            // sum_i (f(t_i) - n int_cell f)^2
  double parseval_residual = 0.0;  // (1/n) sum |A_j|^2 - sum |F_j|^2
  bool three_term_bound_holds = false;  // total <= 3 (A + B + C)
};

/// F_j = (1/n) sum_k a_k exp(-2 pi i k j / n), j = 1..n, k = 1..n; direct O(n^2).
inline std::vector<Complex> direct_dft(const std::vector<double>& a) {
  const int n = static_cast<int>(a.size());
  std::vector<Complex> out(n);
  for (int j = 1; j <= n; ++j) {
    Complex s;
    for (int k = 1; k <= n; ++k) {
      const long long phase = (static_cast<long long>(k) * j) % n;
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(phase) / n;
      s += a[k - 1] * Complex(std::cos(angle), std::sin(angle));
    }
    out[j - 1] = s / static_cast<double>(n);
  }
  return out;
}

inline AppendixBTerms appendix_b_decomposition(const FourierFunction& f, int n) {
  if (n < 1) throw Error("n must be >= 1");
  const FourierFunction low = f.truncated(n);
  const FourierFunction high = f.tail(n);
  AppendixBTerms r;
  r.n = n;
  std::vector<double> A(n);
  for (int i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    A[i - 1] = low.discretization_error(i, n);
    const double B = high(t);
    const double C = high.cell_average(i, n);
    const double e = f.discretization_error(i, n);
    r.A_sum += A[i - 1] * A[i - 1];
    r.B_sum += B * B;
    r.C_sum += C * C;
    r.total += e * e;
  }
  double energy = 0.0;
  for (const Complex& Fj : direct_dft(A)) energy += std::norm(Fj);
  r.parseval_residual = r.A_sum / n - energy;
  r.three_term_bound_holds = r.total <= 3.0 * (r.A_sum + r.B_sum + r.C_sum) * (1.0 + 1e-12) + 1e-300;
  return r;
}

/// Discrepancy between the transformed experiments
///   n sup_j (mu(j/(n+1)) - mu_{j,n})^2 + n sup_j (q'(j/(n+1)) - sigma^2_{j,n})^2
/// with mu_{j,n} = S_j / v(t_j) - S_{j-1} / v(t_{j-1}), S_j = sum_{i<=j} f(t_i),
/// sigma^2_{j,n} = n (q(t_j) - q(t_{j-1})) and mu = (f v - v' F_f) / v^2.
struct TransformationDiscrepancy {
  double mean_term = 0.0;
  double variance_term = 0.0;
  double value = 0.0;
  std::string warning;
};

inline TransformationDiscrepancy transformation_discrepancy(const GaussMarkovKernel& k,
                                                            const FourierFunction& f, int n) {
  k.require_regular();
  if (n < 1) throw Error("n must be >= 1");
  double mean_sup = 0.0;
  double var_sup = 0.0;
  double partial_prev = 0.0;
  double v_prev = k.v(0.0);
  double q_prev = k.q(0.0);
  for (int j = 1; j <= n; ++j) {
    const double t = static_cast<double>(j) / n;
    const double partial = partial_prev + f(t);
    const double v = k.v(t);
    const double q = k.q(t);
    const double mu_jn = partial / v - partial_prev / v_prev;
    const double sigma_sq = n * (q - q_prev);
    const double s = static_cast<double>(j) / (n + 1);
    const double vs = k.v(s);
    const double mu_s = (f(s) * vs - k.v_prime(s) * f.antiderivative(s)) / (vs * vs);
    mean_sup = std::max(mean_sup, (mu_s - mu_jn) * (mu_s - mu_jn));
    var_sup = std::max(var_sup, (k.q_prime(s) - sigma_sq) * (k.q_prime(s) - sigma_sq));
    partial_prev = partial;
    v_prev = v;
    q_prev = q;
  }
  TransformationDiscrepancy r;
  r.mean_term = n * mean_sup;
  r.variance_term = n * var_sup;
  r.value = r.mean_term + r.variance_term;
  r.warning = "the continuous-to-discrete step for the transformed experiments also needs q'' "
              "to exist; only first derivatives of q are checked";
  return r;
}

// ---------------------------------------------------------------------------
// Rate sweeps

enum class Statistic { condition_i, condition_ii, kl, transformation, appendix_b_terms };

inline const char* to_string(Statistic s) {
  switch (s) {
    case Statistic::condition_i: return "condition_i";
    case Statistic::condition_ii: return "condition_ii";
    case Statistic::kl: return "kl";
    case Statistic::transformation: return "transformation";
    case Statistic::appendix_b_terms: return "appendix_b_terms";
  }
  return "?";
}

inline Statistic statistic_from_string(std::string_view s) {
  for (Statistic st : {Statistic::condition_i, Statistic::condition_ii, Statistic::kl,
                       Statistic::transformation, Statistic::appendix_b_terms})
    if (s == to_string(st)) return st;
  throw Error("unknown statistic '" + std::string(s) + "'");
}

inline double evaluate_statistic(Statistic s, const KernelPtr& k, const FourierFunction& f, int n) {
  switch (s) {
    case Statistic::condition_i: return condition_i_statistic(*k, f, n);
    case Statistic::condition_ii: return condition_ii_statistic(k, f, n);
    case Statistic::kl: return kl_e1_vs_e1prime(*k, f, n);
    case Statistic::transformation: return transformation_discrepancy(*k, f, n).value;
    case Statistic::appendix_b_terms: {
      const auto t = appendix_b_decomposition(f, n);
      return t.A_sum + t.B_sum + t.C_sum;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

struct NamedFunction {
  std::string id;
  FourierFunction f;
};

/// A family of test functions; it may depend on n (extremal members track n).
using Family = std::function<std::vector<NamedFunction>(int n)>;

namespace families {

inline Family single(std::string id, FourierFunction f) {
  return [id = std::move(id), f = std::move(f)](int) { return std::vector<NamedFunction>{{id, f}}; };
}

/// {cos(2 pi x)}.
inline Family single_frequency() { return single("cos(2pi x)", FourierFunction::cosine(1)); }

inline Family zero() { return single("zero", FourierFunction{}); }

/// Members L (1+k)^{-beta} cos(2 pi k x) at k in {1, n/2, n, 2n}.
inline Family extremal(ClassSpec spec) {
  return [spec](int n) {
    std::vector<NamedFunction> out;
    std::vector<int> ks{1, std::max(1, n / 2), n, 2 * n};
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    for (int k : ks) out.push_back({"extremal k=" + std::to_string(k), extremal_member(spec, k)});
    return out;
  };
}

/// `count` seeded ellipsoid samples with cutoff K = n.
inline Family random(ClassSpec spec, int count, std::uint64_t seed) {
  return [spec, count, seed](int n) {
    std::vector<NamedFunction> out;
    for (int i = 0; i < count; ++i) {
      out.push_back({"random seed=" + std::to_string(seed + i), sample_ellipsoid(spec, n, seed + i)});
    }
    return out;
  };
}

/// Extremal members plus seeded random members.
inline Family sobolev(ClassSpec spec, int count, std::uint64_t seed) {
  return [ext = extremal(spec), rnd = random(spec, count, seed)](int n) {
    auto out = ext(n);
    for (auto& m : rnd(n)) out.push_back(std::move(m));
    return out;
  };
}

}  // namespace families

struct LineFit {
  double slope = std::numeric_limits<double>::quiet_NaN();
  double intercept = std::numeric_limits<double>::quiet_NaN();
  double slope_stderr = std::numeric_limits<double>::quiet_NaN();
  int points = 0;
};

/// Least squares of log(y) on log(x) over entries with finite positive y.
inline LineFit fit_loglog(const std::vector<int>& xs, const std::vector<double>& ys) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::isfinite(ys[i]) && ys[i] > 0.0) {
      lx.push_back(std::log(static_cast<double>(xs[i])));
      ly.push_back(std::log(ys[i]));
    }
  }
  LineFit fit;
  fit.points = static_cast<int>(lx.size());
  if (lx.size() < 2) return fit;
  const double m = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (lx.size() > 2) {
    double ssr = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      const double r = ly[i] - fit.intercept - fit.slope * lx[i];
      ssr += r * r;
    }
    fit.slope_stderr = std::sqrt(ssr / (m - 2.0) / sxx);
  }
  return fit;
}

struct RateRow {
  int n = 0;
  double value = 0.0;       // max over the family
  std::string argmax;       // member attaining the max
  std::vector<double> member_values;
  std::vector<std::string> member_ids;
};

struct RateReport {
  std::string statistic;
  std::string kernel;
  std::string family;
  std::vector<RateRow> rows;
  LineFit fit;
  int fit_from = 0;        // index of the first n used by the fit
  double target = 0.0;
  double margin = 0.3;
  bool degenerate = false;  // statistic vanishes identically or too few finite points
  int excluded = 0;         // non-finite entries
  bool passed = false;

  std::vector<int> ns() const {
    std::vector<int> out;
    for (const auto& r : rows) out.push_back(r.n);
    return out;
  }
  std::vector<double> values() const {
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r.value);
    return out;
  }
};

/// {16, 32, ..., 512}.
inline std::vector<int> default_n_grid() { return {16, 32, 64, 128, 256, 512}; }

/// Evaluates the statistic for every (n, member) cell, takes the per-n maximum over
/// the family and fits the log-log slope on the upper half of the n grid. Suprema
/// over a class are only ever family maxima, i.e. lower bounds.
///
/// The gate passes when |slope - target| <= margin; a statistic that is zero at
/// every n is degenerate and passes trivially.
inline RateReport rate_sweep(Statistic stat, const KernelPtr& kernel, const Family& family,
                             std::string family_id, const std::vector<int>& ns, double target,
                             double margin = 0.3, int fit_from = -1) {
  if (ns.empty()) throw Error("rate sweep needs a non-empty n grid");
  for (std::size_t i = 1; i < ns.size(); ++i)
    if (ns[i] <= ns[i - 1]) throw Error("n grid must be strictly increasing");
  RateReport r;
  r.statistic = to_string(stat);
  r.kernel = kernel->name();
  r.family = std::move(family_id);
  r.target = target;
  r.margin = margin;
  r.fit_from = fit_from < 0 ? static_cast<int>(ns.size()) / 2 : fit_from;
  if (ns.size() - r.fit_from < 2) r.fit_from = std::max(0, static_cast<int>(ns.size()) - 2);

  struct Cell {
    int row;
    std::size_t member;
  };
  std::vector<std::vector<NamedFunction>> members(ns.size());
  std::vector<Cell> cells;
  r.rows.resize(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    members[i] = family(ns[i]);
    if (members[i].empty()) throw Error("family is empty at n=" + std::to_string(ns[i]));
    r.rows[i].n = ns[i];
    r.rows[i].member_values.resize(members[i].size());
    for (std::size_t m = 0; m < members[i].size(); ++m) {
      r.rows[i].member_ids.push_back(members[i][m].id);
      cells.push_back({static_cast<int>(i), m});
    }
  }
  parallel_for(cells.size(), [&](std::size_t c) {
    const auto [row, m] = cells[c];
    r.rows[row].member_values[m] = evaluate_statistic(stat, kernel, members[row][m].f, ns[row]);
  });

  bool all_zero = true;
  for (auto& row : r.rows) {
    row.value = -std::numeric_limits<double>::infinity();
    bool any_finite = false;
    for (std::size_t m = 0; m < row.member_values.size(); ++m) {
      const double x = row.member_values[m];
      if (!std::isfinite(x)) {
        ++r.excluded;
        continue;
      }
      any_finite = true;
      if (x > row.value) {
        row.value = x;
        row.argmax = row.member_ids[m];
      }
    }
    if (!any_finite) row.value = std::numeric_limits<double>::quiet_NaN();
    if (row.value != 0.0) all_zero = false;
  }

  std::vector<int> fx(ns.begin() + r.fit_from, ns.end());
  std::vector<double> fy;
  for (std::size_t i = r.fit_from; i < ns.size(); ++i) fy.push_back(r.rows[i].value);
  r.fit = fit_loglog(fx, fy);
  if (all_zero) {
    r.degenerate = true;
    r.passed = true;
  } else if (r.fit.points < 2) {
    r.degenerate = true;
    r.passed = false;
  } else {
    r.passed = std::abs(r.fit.slope - target) <= margin;
  }
  return r;
}

}  // namespace gmequiv
