#pragma once

/// F^alpha differentiation and integration through the conjugacy u = S(x).

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fractal/quadrature.hpp"
#include "fractal/staircase.hpp"

namespace fractal {

/// Sampled real function; xs strictly ascending, values finite.
struct GridFunction {
  std::vector<double> xs;
  std::vector<double> values;
  std::string label;

  GridFunction() = default;
  GridFunction(std::vector<double> x, std::vector<double> v, std::string name = {})
      : xs(std::move(x)), values(std::move(v)), label(std::move(name)) {
    validate();
  }

  void validate() const {
    if (xs.size() != values.size()) {
      throw std::invalid_argument("GridFunction: xs and values differ in length");
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i > 0 && !(xs[i] > xs[i - 1])) {
        throw std::invalid_argument("GridFunction: xs must be strictly ascending");
      }
      if (!std::isfinite(values[i])) {
        throw std::invalid_argument("GridFunction: non-finite value at x = " +
                                    std::to_string(xs[i]));
      }
    }
  }

  [[nodiscard]] std::size_t size() const { return xs.size(); }

  [[nodiscard]] double max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::fabs(v));
    return m;
  }
};

/// `count` evenly spaced points from start to stop inclusive.
inline std::vector<double> linspace(double start, double stop, int count) {
  if (count < 2) throw std::invalid_argument("linspace: count must be >= 2");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = start + (stop - start) * i / (count - 1);
  }
  out.back() = stop;
  return out;
}

/// A real function with fractal support. Either given in x directly, or as
/// phi o S (the canonical form: its conjugate is phi itself, no quantile
/// rounding involved).
class FractalFn {
 public:
  using Fn = std::function<double(double)>;

  FractalFn() : FractalFn(of_staircase([](double) { return 0.0; })) {}

  static FractalFn of_x(Fn f) { return FractalFn(std::move(f), false); }
  static FractalFn of_staircase(Fn phi) { return FractalFn(std::move(phi), true); }

  [[nodiscard]] bool staircase_form() const { return staircase_form_; }

  [[nodiscard]] double at_x(const StaircaseFn& sf, double x) const {
    return staircase_form_ ? fn_(cantor_eval(sf, x)) : fn_(x);
  }

  /// Conjugated value g(u) = f(quantile(u)).
  [[nodiscard]] double at_u(const StaircaseFn& sf, double u) const {
    return staircase_form_ ? fn_(u) : fn_(cantor_quantile(sf, u));
  }

 private:
  FractalFn(Fn f, bool staircase_form) : fn_(std::move(f)), staircase_form_(staircase_form) {}

  Fn fn_;
  bool staircase_form_;
};

/// f viewed in the u-coordinate.
class ConjugatedFn {
 public:
  ConjugatedFn(FractalFn f, StaircaseFn sf) : f_(std::move(f)), sf_(sf) {}

  double operator()(double u) const { return f_.at_u(sf_, u); }

  [[nodiscard]] const StaircaseFn& staircase() const { return sf_; }

 private:
  FractalFn f_;
  StaircaseFn sf_;
};

namespace detail {

/// First or second finite difference at u. Central when u lies inside
/// [lo, hi], with the step capped at 1/16 of the distance to the nearest bound
/// so the stencil never leaves the domain; one-sided (second order) when u
/// sits on a bound.
template <class G>
double finite_difference(const G& g, double u, int order, double h, double lo, double hi) {
  if (order == 0) return g(u);
  if (order > 2) throw std::invalid_argument("finite_difference: order must be 0, 1 or 2");
  const double room = std::min(u - lo, hi - u);
  if (room > 0.0) {
    const double s = std::min(h, room / 16.0);
    if (order == 1) return (g(u + s) - g(u - s)) / (2.0 * s);
    return (g(u + s) - 2.0 * g(u) + g(u - s)) / (s * s);
  }
  const double d = (u - lo <= 0.0) ? h : -h;
  if (order == 1) return (-3.0 * g(u) + 4.0 * g(u + d) - g(u + 2.0 * d)) / (2.0 * d);
  return (2.0 * g(u) - 5.0 * g(u + d) + 4.0 * g(u + 2.0 * d) - g(u + 3.0 * d)) / (d * d);
}

/// Two-level Richardson extrapolation of the central difference.
template <class G>
std::pair<double, double> richardson_difference(const G& g, double u, int order, double h,
                                                double lo, double hi) {
  const double coarse = finite_difference(g, u, order, h, lo, hi);
  const double fine = finite_difference(g, u, order, h / 2.0, lo, hi);
  return {(4.0 * fine - coarse) / 3.0, std::fabs(fine - coarse)};
}

}  // namespace detail

/// D_F^alpha f(x): zero off the Cantor set, otherwise the derivative of the
/// conjugate g = f o quantile at u = S(x) (central difference in u).
inline double f_alpha_derivative(const FractalFn& f, const StaircaseFn& sf, double x,
                                 double h = 1e-6) {
  if (!(h > 0.0)) throw std::invalid_argument("f_alpha_derivative: h must be positive");
  if (!cantor_membership(sf, x)) return 0.0;
  const double u = cantor_eval(sf, x);
  const auto [lo, hi] = sf.u_range();
  const ConjugatedFn g(f, sf);
  const double d = detail::finite_difference(g, u, 1, h, lo, hi);
  if (!std::isfinite(d)) {
    throw std::domain_error("f_alpha_derivative: non-finite function values near x = " +
                            std::to_string(x));
  }
  return d;
}

/// Integral of f against the staircase measure over [a, b], computed as
/// the ordinary integral of the conjugate over [S(a), S(b)].
inline double f_alpha_integral(const FractalFn& f, const StaircaseFn& sf, double a, double b,
                               const QuadratureRule& rule = {}) {
  if (a > b) throw std::invalid_argument("f_alpha_integral: requires a <= b");
  const ConjugatedFn g(f, sf);
  const double value = integrate(g, cantor_eval(sf, a), cantor_eval(sf, b), rule);
  if (!std::isfinite(value)) {
    throw std::domain_error("f_alpha_integral: non-finite integrand");
  }
  return value;
}

/// Node-count overload: n nodes per unit u-length, Gauss-Legendre.
inline double f_alpha_integral(const FractalFn& f, const StaircaseFn& sf, double a, double b,
                               int n) {
  if (n < 2) throw std::invalid_argument("f_alpha_integral: need at least 2 nodes");
  return f_alpha_integral(f, sf, a, b, QuadratureRule{QuadratureKind::GaussLegendre, n});
}

/// Riemann-Stieltjes sum of f against S over a uniform x-partition
/// (midpoint tags). Slow; a cross-check for f_alpha_integral only.
inline double stieltjes_sum_x(const FractalFn& f, const StaircaseFn& sf, double a, double b,
                              int partitions) {
  if (a > b || partitions < 1) throw std::invalid_argument("stieltjes_sum_x: bad arguments");
  double sum = 0.0;
  double s_prev = cantor_eval(sf, a);
  for (int i = 1; i <= partitions; ++i) {
    const double x_prev = a + (b - a) * (i - 1) / partitions;
    const double x_next = a + (b - a) * i / partitions;
    const double s_next = cantor_eval(sf, x_next);
    if (s_next != s_prev) sum += f.at_x(sf, 0.5 * (x_prev + x_next)) * (s_next - s_prev);
    s_prev = s_next;
  }
  return sum;
}

/// e^{-S(t)}, the F-limit of (1 - S(t)/n)^n.
inline double fractal_exp(const StaircaseFn& sf, double t) { return std::exp(-cantor_eval(sf, t)); }

}  // namespace fractal
