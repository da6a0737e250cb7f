#pragma once

// Gauss-Markov processes through triangular covariance kernels
// K(s,t) = u(s) v(t) for s <= t, with the time change q = u / v.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gmequiv/errors.hpp"
#include "gmequiv/expression.hpp"

namespace gmequiv {

using RealFunction = std::function<double(double)>;

/// Validity flags computed on the validation grid at construction.
struct KernelFlags {
  bool v_positive_on_closed_interval = false;
  bool v1_nonzero = false;
  bool q_prime_bounded_away_from_zero = false;
};

/// Central difference with step h; second-order one-sided stencils within h of an endpoint.
inline double finite_difference(const RealFunction& fn, double t, double h = 1e-6) {
  if (t - h < 0.0) return (-3.0 * fn(t) + 4.0 * fn(t + h) - fn(t + 2.0 * h)) / (2.0 * h);
  if (t + h > 1.0) return (3.0 * fn(t) - 4.0 * fn(t - h) + fn(t - 2.0 * h)) / (2.0 * h);
  return (fn(t + h) - fn(t - h)) / (2.0 * h);
}

class GaussMarkovKernel {
 public:
  static constexpr int default_grid_size = 1001;

  struct Parts {
    std::string name;
    RealFunction u;
    RealFunction v;
    RealFunction q;        // empty: u / v
    RealFunction q_prime;  // empty: finite differences of q
    RealFunction v_prime;  // empty: finite differences of v
  };

  /// Builds a kernel and checks the non-degeneracy conditions on an equispaced grid.
  /// Throws AssumptionViolation when u*v < 0 somewhere, u*v = 0 in the interior or
  /// q fails to be strictly increasing.
  explicit GaussMarkovKernel(Parts parts, int grid_size = default_grid_size)
      : name_(std::move(parts.name)),
        u_(std::move(parts.u)),
        v_(std::move(parts.v)),
        q_(std::move(parts.q)),
        q_prime_(std::move(parts.q_prime)),
        v_prime_(std::move(parts.v_prime)) {
    analytic_q_prime_ = static_cast<bool>(q_prime_);
    analytic_v_prime_ = static_cast<bool>(v_prime_);
    if (!q_) {
      q_ = [u = u_, v = v_](double t) { return u(t) / v(t); };
    }
    if (!q_prime_) {
      q_prime_ = [q = q_](double t) { return finite_difference(q, t); };
    }
    if (!v_prime_) {
      v_prime_ = [v = v_](double t) { return finite_difference(v, t); };
    }
    check(grid_size);
  }

  const std::string& name() const noexcept { return name_; }
  double u(double t) const { return u_(t); }
  double v(double t) const { return v_(t); }
  /// q(t) = u(t)/v(t); +inf where v vanishes (bridge at t = 1).
  double q(double t) const { return q_(t); }
  double q_prime(double t) const { return q_prime_(t); }
  double v_prime(double t) const { return v_prime_(t); }
  bool analytic_derivatives() const noexcept { return analytic_q_prime_ && analytic_v_prime_; }

  /// T = q(1); infinite for bridge-type kernels.
  double horizon() const { return q_(1.0); }
  const KernelFlags& flags() const noexcept { return flags_; }

  /// Cov(Xi_s, Xi_t) = u(min(s,t)) v(max(s,t)).
  double covariance(double s, double t) const {
    if (s > t) std::swap(s, t);
    return u_(s) * v_(t);
  }

  /// Throws SingularCovariance unless v(1) != 0, i.e. unless Kriging on the grid j/n is defined.
  void require_v1_nonzero() const {
    if (!flags_.v1_nonzero) {
      throw SingularCovariance("kernel '" + name_ +
                               "' has v(1) = 0; knot covariance is singular (requires v(1) != 0)");
    }
  }

  /// Throws KernelDegenerate unless v > 0 on [0,1] and q' > 0.
  void require_regular() const {
    if (!flags_.v_positive_on_closed_interval || !std::isfinite(horizon())) {
      throw KernelDegenerate("kernel '" + name_ + "' needs v > 0 on [0,1] and finite q(1)");
    }
  }

  /// Inverse time change: the t in [0,1] with q(t) = x, by 60 bisection steps.
  double q_inverse(double x) const {
    double lo = 0.0;
    double hi = 1.0;
    if (x <= q_(lo)) return lo;
    if (x >= q_(hi)) return hi;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (q_(mid) < x) lo = mid;
      else hi = mid;
    }
    return 0.5 * (lo + hi);
  }

 private:
  void check(int grid_size) {
    grid_size = std::max(grid_size, 3);
    double prev_q = -std::numeric_limits<double>::infinity();
    double min_v = std::numeric_limits<double>::infinity();
    double min_qp = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_size; ++i) {
      const double t = static_cast<double>(i) / (grid_size - 1);
      const double uv = u_(t) * v_(t);
      if (uv < 0.0) {
        throw AssumptionViolation("kernel '" + name_ + "': u*v < 0 at t=" + std::to_string(t));
      }
      if (uv == 0.0 && i > 0 && i < grid_size - 1) {
        throw AssumptionViolation("kernel '" + name_ + "': u*v = 0 at interior t=" +
                                  std::to_string(t));
      }
      const double qt = q_(t);
      if (!(qt > prev_q)) {
        throw AssumptionViolation("kernel '" + name_ + "': q not strictly increasing at t=" +
                                  std::to_string(t));
      }
      prev_q = qt;
      min_v = std::min(min_v, v_(t));
      if (i < grid_size - 1 || std::isfinite(qt)) min_qp = std::min(min_qp, q_prime_(t));
    }
    flags_.v_positive_on_closed_interval = min_v > 0.0;
    flags_.v1_nonzero = v_(1.0) != 0.0;
    flags_.q_prime_bounded_away_from_zero = min_qp > 0.0;
  }

  std::string name_;
  RealFunction u_;
  RealFunction v_;
  RealFunction q_;
  RealFunction q_prime_;
  RealFunction v_prime_;
  bool analytic_q_prime_ = false;
  bool analytic_v_prime_ = false;
  KernelFlags flags_;
};

using KernelPtr = std::shared_ptr<const GaussMarkovKernel>;

namespace presets {

/// Standard Brownian motion: u(t) = t, v = 1.
inline KernelPtr brownian_motion() {
  return std::make_shared<const GaussMarkovKernel>(GaussMarkovKernel::Parts{
      "bm", [](double t) { return t; }, [](double) { return 1.0; }, [](double t) { return t; },
      [](double) { return 1.0; }, [](double) { return 0.0; }});
}

/// Ornstein-Uhlenbeck process conditioned on Xi_0 = 0:
/// u(t) = exp(Lt) - exp(-Lt), v(t) = exp(-Lt), q(t) = exp(2Lt) - 1.
inline KernelPtr ornstein_uhlenbeck(double rate = 1.0) {
  if (!(rate > 0.0)) throw AssumptionViolation("ou rate L must be positive");
  std::string name = "ou(" + detail::format_double(rate) + ")";
  return std::make_shared<const GaussMarkovKernel>(GaussMarkovKernel::Parts{
      std::move(name), [rate](double t) { return std::exp(rate * t) - std::exp(-rate * t); },
      [rate](double t) { return std::exp(-rate * t); },
      [rate](double t) { return std::expm1(2.0 * rate * t); },
      [rate](double t) { return 2.0 * rate * std::exp(2.0 * rate * t); },
      [rate](double t) { return -rate * std::exp(-rate * t); }});
}

/// Brownian bridge u(t) = t, v(t) = 1 - t. Constructible, but flagged (v(1) = 0).
inline KernelPtr brownian_bridge() {
  return std::make_shared<const GaussMarkovKernel>(GaussMarkovKernel::Parts{
      "bridge", [](double t) { return t; }, [](double t) { return 1.0 - t; },
      [](double t) { return t < 1.0 ? t / (1.0 - t) : std::numeric_limits<double>::infinity(); },
      [](double t) {
        return t < 1.0 ? 1.0 / ((1.0 - t) * (1.0 - t)) : std::numeric_limits<double>::infinity();
      },
      [](double) { return -1.0; }});
}

/// Slepian's process restricted to [0,1]: u(t) = t, v(t) = 2 - t.
inline KernelPtr slepian() {
  return std::make_shared<const GaussMarkovKernel>(GaussMarkovKernel::Parts{
      "slepian", [](double t) { return t; }, [](double t) { return 2.0 - t; },
      [](double t) { return t / (2.0 - t); },
      [](double t) { return 2.0 / ((2.0 - t) * (2.0 - t)); }, [](double) { return -1.0; }});
}

}  // namespace presets

inline RealFunction to_function(std::shared_ptr<const Expression> e) {
  return [e = std::move(e)](double t) { return (*e)(t); };
}

/// Kernel from expression sources; derivatives by finite differences.
inline KernelPtr make_kernel(std::string name, std::string_view u_src, std::string_view v_src,
                             int grid_size = GaussMarkovKernel::default_grid_size) {
  GaussMarkovKernel::Parts parts;
  parts.name = std::move(name);
  parts.u = to_function(parse_expression(u_src));
  parts.v = to_function(parse_expression(v_src));
  return std::make_shared<const GaussMarkovKernel>(std::move(parts), grid_size);
}

/// Preset by name: "bm", "ou" (uses `rate`), "ou(<rate>)", "bridge", "slepian".
inline KernelPtr make_preset(std::string_view preset, double rate = 1.0) {
  if (preset == "bm") return presets::brownian_motion();
  if (preset == "ou") return presets::ornstein_uhlenbeck(rate);
  if (preset.starts_with("ou(") && preset.ends_with(")")) {
    const auto inner = preset.substr(3, preset.size() - 4);
    double r = 0.0;
    const auto [ptr, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), r);
    if (ec != std::errc{} || ptr != inner.data() + inner.size()) {
      throw Error("invalid ou rate in '" + std::string(preset) + "'");
    }
    return presets::ornstein_uhlenbeck(r);
  }
  if (preset == "bridge") return presets::brownian_bridge();
  if (preset == "slepian") return presets::slepian();
  throw Error("unknown kernel preset '" + std::string(preset) + "'");
}

/// Conditions a Gauss-Markov process with covariance U(s)V(t) on X_0 = 0:
/// u = U - Q(0) V, v = V with Q = U / V.
inline KernelPtr condition_on_zero(std::string name, std::string_view U_src, std::string_view V_src,
                                   int grid_size = GaussMarkovKernel::default_grid_size) {
  auto U = parse_expression(U_src);
  auto V = parse_expression(V_src);
  const double v0 = (*V)(0.0);
  if (v0 == 0.0) throw DivisionByZero("condition_on_zero: V(0) = 0, Q(0) undefined");
  const double q0 = (*U)(0.0) / v0;
  GaussMarkovKernel::Parts parts;
  parts.name = std::move(name);
  parts.u = [U, V, q0](double t) { return (*U)(t) - q0 * (*V)(t); };
  parts.v = to_function(V);
  return std::make_shared<const GaussMarkovKernel>(std::move(parts), grid_size);
}

/// One row of a validation report.
struct Check {
  std::string property;
  bool passed = false;
  std::string witness;
};

struct ValidationReport {
  std::string kernel;
  int grid_size = 0;
  std::vector<Check> checks;
  double q_prime_min = 0.0;
  double q_prime_max = 0.0;
  // Informational only; estimated from dyadic increments.
  double v_prime_hoelder_index = 0.0;
  double q_prime_hoelder_index = 0.0;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
  const Check* find(std::string_view property) const {
    for (const auto& c : checks)
      if (c.property == property) return &c;
    return nullptr;
  }
};

/// Hoelder index of `fn` on [0,1] estimated from the slope of log max-increment
/// against log step over dyadic steps 2^-2 .. 2^-10. Clamped to [0, 1];
/// a function with no measurable increments reports 1.
inline double estimate_hoelder_index(const RealFunction& fn, int grid_size) {
  std::vector<double> xs;
  std::vector<double> ys;
  const int m = std::max(grid_size, 1025);
  std::vector<double> values(m);
  bool finite = true;
  for (int i = 0; i < m; ++i) {
    values[i] = fn(static_cast<double>(i) / (m - 1));
    finite = finite && std::isfinite(values[i]);
  }
  if (!finite) return 0.0;
  for (int level = 2; level <= 10; ++level) {
    const double step = std::ldexp(1.0, -level);
    const int shift = static_cast<int>(std::lround(step * (m - 1)));
    if (shift < 1) break;
    double omega = 0.0;
    for (int i = 0; i + shift < m; ++i) omega = std::max(omega, std::abs(values[i + shift] - values[i]));
    if (omega <= 1e-12) continue;
    xs.push_back(std::log(static_cast<double>(shift) / (m - 1)));
    ys.push_back(std::log(omega));
  }
  if (xs.size() < 2) return 1.0;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= xs.size();
  my /= ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return std::clamp(sxy / sxx, 0.0, 1.0);
}

/// Grid-based report of the kernel's regularity conditions. Never throws on failure.
inline ValidationReport validate_assumption(const GaussMarkovKernel& k,
                                            int grid_size = GaussMarkovKernel::default_grid_size) {
  grid_size = std::max(grid_size, 3);
  ValidationReport r;
  r.kernel = k.name();
  r.grid_size = grid_size;
  auto at = [&](int i) { return static_cast<double>(i) / (grid_size - 1); };

  {
    Check c{"u*v >= 0 on [0,1], > 0 on (0,1)", true, ""};
    for (int i = 0; i < grid_size && c.passed; ++i) {
      const double uv = k.u(at(i)) * k.v(at(i));
      if (uv < 0.0 || (uv == 0.0 && i > 0 && i < grid_size - 1)) {
        c.passed = false;
        c.witness = "t=" + detail::format_double(at(i)) + " u*v=" + detail::format_double(uv);
      }
    }
    r.checks.push_back(c);
  }
  {
    Check c{"q strictly increasing", true, ""};
    for (int i = 1; i < grid_size && c.passed; ++i) {
      if (!(k.q(at(i)) > k.q(at(i - 1)))) {
        c.passed = false;
        c.witness = "t=" + detail::format_double(at(i));
      }
    }
    r.checks.push_back(c);
  }
  {
    const double q0 = k.q(0.0);
    r.checks.push_back({"q(0) = 0", std::abs(q0) <= 1e-10, "q(0)=" + detail::format_double(q0)});
  }
  {
    const double v1 = k.v(1.0);
    r.checks.push_back({"v(1) != 0", v1 != 0.0, "v(1)=" + detail::format_double(v1)});
  }
  {
    double vmin = std::numeric_limits<double>::infinity();
    double arg = 0.0;
    for (int i = 0; i < grid_size; ++i) {
      const double vv = k.v(at(i));
      if (vv < vmin) vmin = vv, arg = at(i);
    }
    r.checks.push_back({"inf v > 0", vmin > 0.0,
                        "min v=" + detail::format_double(vmin) + " at t=" + detail::format_double(arg)});
  }
  {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_size; ++i) {
      const double qp = k.q_prime(at(i));
      lo = std::min(lo, qp);
      hi = std::max(hi, std::isnan(qp) ? std::numeric_limits<double>::infinity() : qp);
    }
    r.q_prime_min = lo;
    r.q_prime_max = hi;
    r.checks.push_back({"0 < inf q' <= sup q' < inf", lo > 0.0 && std::isfinite(hi),
                        "q' in [" + detail::format_double(lo) + ", " + detail::format_double(hi) + "]"});
  }
  r.v_prime_hoelder_index =
      estimate_hoelder_index([&k](double t) { return k.v_prime(t); }, grid_size);
  r.q_prime_hoelder_index =
      estimate_hoelder_index([&k](double t) { return k.q_prime(t); }, grid_size);
  return r;
}

}  // namespace gmequiv
