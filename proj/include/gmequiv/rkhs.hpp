#pragma once

// The RKHS H(Xi) of a triangular kernel. The isometry psi sends K(., t) to
// v(t) 1_[0, q(t)] in L^2([0, T]), so every F in H(Xi) is
//
//   F(t) = v(t) * integral_0^{q(t)} g(u) du,   ||F||_H = ||g||_{L^2([0,T])}.

#include <cmath>
#include <memory>
#include <optional>
#include <utility>

#include "gmequiv/errors.hpp"
#include "gmequiv/fourier.hpp"
#include "gmequiv/kernel.hpp"
#include "gmequiv/quadrature.hpp"

namespace gmequiv {

/// g(q(t)) = (F_f / v)'(t) / q'(t) = [f v - v' F_f] / [v^2 q'] at time t.
inline double g_at_time(const GaussMarkovKernel& k, const FourierFunction& f, double t) {
  const double v = k.v(t);
  return (f(t) * v - k.v_prime(t) * f.antiderivative(t)) / (v * v * k.q_prime(t));
}

/// Recovers g(q(t)) from an arbitrary F by differentiating F / v numerically.
inline double g_from_antiderivative(const GaussMarkovKernel& k, const RealFunction& F, double t) {
  const RealFunction ratio = [&](double s) { return F(s) / k.v(s); };
  return finite_difference(ratio, t, 1e-5) / k.q_prime(t);
}

/// psi(K(., t)) evaluated at x in [0, T].
inline double psi_generator(const GaussMarkovKernel& k, double t, double x) {
  return x <= k.q(t) ? k.v(t) : 0.0;
}

class RkhsElement {
 public:
  enum class Representation { from_g, from_f };

  /// F = F_f for a Fourier function f.
  RkhsElement(KernelPtr kernel, FourierFunction f)
      : kernel_(std::move(kernel)), f_(std::move(f)), representation_(Representation::from_f) {}

  /// F built from g on [0, T].
  RkhsElement(KernelPtr kernel, RealFunction g)
      : kernel_(std::move(kernel)), g_(std::move(g)), representation_(Representation::from_g) {}

  Representation representation() const noexcept { return representation_; }
  const GaussMarkovKernel& kernel() const noexcept { return *kernel_; }

  /// g at x in [0, T]; the from_f form inverts q by bisection.
  double g(double x) const {
    if (representation_ == Representation::from_g) return g_(x);
    return g_at_time(*kernel_, *f_, kernel_->q_inverse(x));
  }

  /// g(q(t)).
  double g_of_time(double t) const {
    if (representation_ == Representation::from_g) return g_(kernel_->q(t));
    return g_at_time(*kernel_, *f_, t);
  }

  /// F(t). For from_g this is v(t) times the quadrature of g over [0, q(t)].
  double F(double t) const {
    if (representation_ == Representation::from_f) return f_->antiderivative(t);
    const double upper = kernel_->q(t);
    if (upper <= 0.0) return 0.0;
    return kernel_->v(t) * integrate_or_throw(g_, 0.0, upper, 1e-12, 10, 1e-300);
  }

  /// ||F||_H = ||g||_{L^2([0,T])}, computed as integral_0^1 g(q(w))^2 q'(w) dw.
  double norm(double rel_tol = 1e-9) const {
    const auto integrand = [this](double w) {
      const double gq = g_of_time(w);
      return gq * gq * kernel_->q_prime(w);
    };
    constexpr int cells = 16;
    double total = 0.0;
    double worst = 0.0;
    bool ok = true;
    for (int c = 0; c < cells; ++c) {
      const auto r = integrate(integrand, static_cast<double>(c) / cells,
                               static_cast<double>(c + 1) / cells, rel_tol, 6, 1e-300);
      total += r.value;
      worst = std::max(worst, r.relative_change);
      ok = ok && r.converged;
    }
    if (!ok) throw QuadratureFailure("RKHS norm quadrature did not converge", worst);
    return std::sqrt(total);
  }

 private:
  KernelPtr kernel_;
  std::optional<FourierFunction> f_;
  RealFunction g_;
  Representation representation_;
};

/// The psi-image of F_f. Needs v > 0 on [0,1] and finite q(1).
inline RkhsElement g_from_f(KernelPtr kernel, FourierFunction f) {
  kernel->require_regular();
  return RkhsElement(std::move(kernel), std::move(f));
}

inline double rkhs_norm(const RkhsElement& e) { return e.norm(); }

/// Squared H(Xi)-distance from F_f to span{K(., j/n) : j = 1..n}.
///
/// Through psi the span is the step functions on the cells (q(t_{j-1}), q(t_j)],
/// so after the change of variables u = q(w) the optimum on cell j is the
/// q'-weighted mean alpha_j of g(q(w)), and
///
///   D_n = sum_j integral_cell (g(q(w)) - alpha_j)^2 q'(w) dw.
///
/// Both passes use 16-point Gauss-Legendre with panel doubling.
inline double projection_distance(const KernelPtr& kernel, const FourierFunction& f, int n) {
  kernel->require_regular();
  if (n < 1) throw Error("projection_distance needs n >= 1");
  const GaussMarkovKernel& k = *kernel;
  double total = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double a = static_cast<double>(j - 1) / n;
    const double b = static_cast<double>(j) / n;
    const double dq = k.q(b) - k.q(a);
    if (!(dq > 0.0)) throw KernelDegenerate("q does not increase on cell " + std::to_string(j));
    // Cancellation can make alpha_j or the residual tiny; convergence is then judged
    // against the scale of |g| and g^2 on the cell.
    const double abs_scale = gauss_legendre_16([&](double w) { return std::abs(g_at_time(k, f, w)) * k.q_prime(w); }, a, b);
    const double sq_scale = gauss_legendre_16([&](double w) { return std::pow(g_at_time(k, f, w), 2) * k.q_prime(w); }, a, b);
    const auto mass = integrate([&](double w) { return g_at_time(k, f, w) * k.q_prime(w); }, a, b,
                                1e-9, 6, std::max(1e-13 * abs_scale, 1e-300));
    const double alpha = mass.value / dq;
    const auto resid = integrate(
        [&](double w) {
          const double d = g_at_time(k, f, w) - alpha;
          return d * d * k.q_prime(w);
        },
        a, b, 1e-9, 6, std::max(1e-15 * sq_scale, 1e-300));
    if (!resid.converged || !mass.converged) {
      throw QuadratureFailure("projection distance quadrature on cell " + std::to_string(j),
                              std::max(resid.relative_change, mass.relative_change));
    }
    total += resid.value;
  }
  return total;
}

}  // namespace gmequiv
