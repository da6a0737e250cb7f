#pragma once

// Real functions on [0,1] as finite Fourier series f = sum_k theta_k e_k with
// e_k(x) = exp(-2 pi i k x) and theta_{-k} = conj(theta_k).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "gmequiv/errors.hpp"
#include "gmequiv/random.hpp"

namespace gmequiv {

using Complex = std::complex<double>;

/// e_k(t) = exp(-2 pi i k t), with k t reduced modulo 1 before the trig call.
inline Complex basis(int k, double t) {
  double phase = static_cast<double>(k) * t;
  phase -= std::floor(phase);
  const double angle = -2.0 * std::numbers::pi * phase;
  return {std::cos(angle), std::sin(angle)};
}

class FourierFunction {
 public:
  static constexpr double residue_tolerance = 1e-12;

  FourierFunction() = default;

  /// Coefficients as (k, theta_k). A missing partner -k is completed by conjugation;
  /// an inconsistent pair or a complex theta_0 throws HermitianViolation.
  explicit FourierFunction(const std::vector<std::pair<int, Complex>>& coeffs) {
    std::map<int, Complex> given;
    for (const auto& [k, theta] : coeffs) given[k] += theta;
    for (const auto& [k, theta] : given) {
      const double tol = 1e-12 * std::max(1.0, std::abs(theta));
      if (k == 0) {
        if (std::abs(theta.imag()) > tol) throw HermitianViolation("theta_0 must be real");
        set(0, {theta.real(), 0.0});
        continue;
      }
      if (auto it = given.find(-k); it != given.end()) {
        if (std::abs(it->second - std::conj(theta)) > tol) {
          throw HermitianViolation("theta_" + std::to_string(-k) + " != conj(theta_" +
                                   std::to_string(k) + ")");
        }
      }
      const Complex positive = k > 0 ? theta : std::conj(theta);
      set(std::abs(k), positive);
    }
  }

  static FourierFunction constant(double c) { return FourierFunction({{0, Complex(c, 0.0)}}); }

  /// a cos(2 pi k x) with k >= 1.
  static FourierFunction cosine(int k, double amplitude = 1.0) {
    return FourierFunction({{k, Complex(amplitude / 2.0, 0.0)}});
  }

  /// a sin(2 pi k x) with k >= 1 (theta_k = i a / 2 under e_k = exp(-2 pi i k x)).
  static FourierFunction sine(int k, double amplitude = 1.0) {
    return FourierFunction({{k, Complex(0.0, amplitude / 2.0)}});
  }

  /// theta_k for any integer k (zero when absent).
  Complex coefficient(int k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Complex{} : it->second;
  }

  /// All nonzero coefficients with both signs of k.
  const std::map<int, Complex>& coefficients() const noexcept { return coeffs_; }

  /// Largest |k| carrying a coefficient.
  int cutoff() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

  bool is_zero() const { return coeffs_.empty(); }

  /// f(t). Throws HermitianViolation if the imaginary residue exceeds the tolerance.
  double operator()(double t) const {
    Complex s = coefficient(0);
    for (const auto& [k, theta] : coeffs_)
      if (k != 0) s += theta * basis(k, t);
    return real_part(s);
  }

  /// F_f(t) = integral of f over [0,t], in closed form.
  double antiderivative(double t) const {
    Complex s = coefficient(0) * t;
    for (const auto& [k, theta] : coeffs_)
      if (k != 0) s += theta * (basis(k, t) - 1.0) / Complex(0.0, -2.0 * std::numbers::pi * k);
    return real_part(s);
  }

  /// n times the integral of f over ((i-1)/n, i/n]. theta_0 enters exactly.
  double cell_average(int i, int n) const {
    const double a = static_cast<double>(i - 1) / n;
    const double b = static_cast<double>(i) / n;
    Complex s;
    for (const auto& [k, theta] : coeffs_) {
      if (k != 0) {
        s += theta * static_cast<double>(n) * (basis(k, b) - basis(k, a)) /
             Complex(0.0, -2.0 * std::numbers::pi * k);
      }
    }
    return coefficient(0).real() + real_part(s);
  }

  /// f(t_i) - n * integral over cell i; the theta_0 term cancels exactly.
  double discretization_error(int i, int n) const {
    const double a = static_cast<double>(i - 1) / n;
    const double b = static_cast<double>(i) / n;
    Complex s;
    for (const auto& [k, theta] : coeffs_) {
      if (k != 0) {
        s += theta * (basis(k, b) - static_cast<double>(n) * (basis(k, b) - basis(k, a)) /
                                        Complex(0.0, -2.0 * std::numbers::pi * k));
      }
    }
    return real_part(s);
  }

  /// sum_k (1 + |k|)^{2 beta} |theta_k|^2.
  double sobolev_norm_sq(double beta) const {
    double s = 0.0;
    for (const auto& [k, theta] : coeffs_)
      s += std::pow(1.0 + std::abs(k), 2.0 * beta) * std::norm(theta);
    return s;
  }

  /// sum_k |theta_k|^2 = integral of f^2 (Parseval).
  double l2_norm_sq() const { return sobolev_norm_sq(0.0); }

  /// Part with |k| <= K.
  FourierFunction truncated(int K) const {
    FourierFunction out;
    for (const auto& [k, theta] : coeffs_)
      if (std::abs(k) <= K) out.coeffs_[k] = theta;
    return out;
  }

  /// Part with |k| > K.
  FourierFunction tail(int K) const {
    FourierFunction out;
    for (const auto& [k, theta] : coeffs_)
      if (std::abs(k) > K) out.coeffs_[k] = theta;
    return out;
  }

  FourierFunction scaled(double a) const {
    FourierFunction out;
    for (const auto& [k, theta] : coeffs_) out.coeffs_[k] = a * theta;
    return out;
  }

  friend FourierFunction operator+(const FourierFunction& a, const FourierFunction& b) {
    FourierFunction out = a;
    for (const auto& [k, theta] : b.coeffs_) out.coeffs_[k] += theta;
    return out;
  }

  friend bool operator==(const FourierFunction&, const FourierFunction&) = default;

 private:
  void set(int k_positive, Complex theta) {
    if (theta == Complex{}) return;
    coeffs_[k_positive] = theta;
    if (k_positive != 0) coeffs_[-k_positive] = std::conj(theta);
  }

  double real_part(Complex s) const {
    double scale = 1.0;
    for (const auto& [k, theta] : coeffs_) scale += std::abs(theta);
    if (std::abs(s.imag()) > residue_tolerance * scale) {
      throw HermitianViolation("imaginary residue " + std::to_string(s.imag()));
    }
    return s.real();
  }

  std::map<int, Complex> coeffs_;
};

enum class ClassKind { sobolev, hoelder };

/// Sobolev ellipsoid Theta(beta, L) or Hoelder class F(alpha, L, M).
struct ClassSpec {
  ClassKind kind = ClassKind::sobolev;
  double smoothness = 1.0;  // beta (Sobolev) or alpha (Hoelder)
  double radius = 1.0;      // L
  double sup_bound = std::numeric_limits<double>::infinity();  // M, Hoelder only

  static ClassSpec sobolev(double beta, double L) { return {ClassKind::sobolev, beta, L, 0.0}; }
  static ClassSpec hoelder(double alpha, double L,
                           double M = std::numeric_limits<double>::infinity()) {
    return {ClassKind::hoelder, alpha, L, M};
  }

  /// Whether the smoothness satisfies the hypotheses of the equivalence results
  /// (beta > 1/2, or alpha in (1/2, 1]); other values are exploratory.
  bool within_theory() const {
    if (kind == ClassKind::sobolev) return smoothness > 0.5;
    return smoothness > 0.5 && smoothness <= 1.0;
  }

  bool contains(const FourierFunction& f) const {
    return f.sobolev_norm_sq(smoothness) <= radius * radius;
  }
};

/// Random member of a Sobolev ellipsoid with |theta_k| proportional to
/// U_k (1+|k|)^{-beta-1/2-0.05}, random phases, rescaled to norm^2 = 0.95 L^2.
inline FourierFunction sample_ellipsoid(const ClassSpec& spec, int K, std::uint64_t seed) {
  if (spec.kind != ClassKind::sobolev) throw Error("sample_ellipsoid needs a Sobolev class");
  constexpr double decay_margin = 0.05;
  RandomStream rng(seed, 0x5A3B0E11u);
  std::vector<std::pair<int, Complex>> coeffs;
  coeffs.emplace_back(0, Complex(2.0 * rng.uniform() - 1.0, 0.0));
  for (int k = 1; k <= K; ++k) {
    const double mag = rng.uniform() * std::pow(1.0 + k, -spec.smoothness - 0.5 - decay_margin);
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    coeffs.emplace_back(k, std::polar(mag, phase));
  }
  FourierFunction f(coeffs);
  const double norm_sq = f.sobolev_norm_sq(spec.smoothness);
  return f.scaled(std::sqrt(0.95 * spec.radius * spec.radius / norm_sq));
}

/// Extremal single-frequency member L (1+k)^{-beta} cos(2 pi k x) (norm^2 = L^2 / 2).
inline FourierFunction extremal_member(const ClassSpec& spec, int k) {
  if (k == 0) return FourierFunction::constant(spec.radius);
  return FourierFunction::cosine(k, spec.radius * std::pow(1.0 + k, -spec.smoothness));
}

struct HoelderReport {
  double hoelder_constant = 0.0;  // max over grid pairs; a lower bound for the true sup
  double sup_norm = 0.0;          // max over the grid; a lower bound as well
  int grid = 0;
  bool refuted = false;           // true when the estimates already exceed L or M
  std::string note = "grid estimates are lower bounds for the true suprema; membership is never certified";
};

/// Estimates sup |f(x)-f(y)|/|x-y|^alpha over all pairs of an equispaced grid.
inline HoelderReport hoelder_check(const FourierFunction& f, const ClassSpec& spec, int grid) {
  if (spec.kind != ClassKind::hoelder) throw Error("hoelder_check needs a Hoelder class");
  grid = std::max(grid, 2);
  std::vector<double> values(grid);
  HoelderReport r;
  r.grid = grid;
  for (int i = 0; i < grid; ++i) {
    values[i] = f(static_cast<double>(i) / (grid - 1));
    r.sup_norm = std::max(r.sup_norm, std::abs(values[i]));
  }
  // For a fixed lag, the quotient scales as lag^-alpha; scanning all lags is O(grid^2).
  const double h = 1.0 / (grid - 1);
  for (int lag = 1; lag < grid; ++lag) {
    double best = 0.0;
    for (int i = 0; i + lag < grid; ++i) best = std::max(best, std::abs(values[i + lag] - values[i]));
    r.hoelder_constant = std::max(r.hoelder_constant, best / std::pow(lag * h, spec.smoothness));
  }
  r.refuted = r.hoelder_constant > spec.radius || r.sup_norm > spec.sup_bound;
  return r;
}

}  // namespace gmequiv
