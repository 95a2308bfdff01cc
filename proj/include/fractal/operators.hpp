#pragma once

/// Left/right Riemann-Liouville fractal integrals and derivatives and
/// Caputo fractal derivatives, evaluated in the u = S(x) coordinate.
///
/// Every operator reduces to a weakly singular kernel integral
///
///     K[g](U) = 1/Gamma(order) * int |U - v|^(order - kappa) g(v) dv
///
/// over [S(a), U] (left) or [U, S(b)] (right), with kappa = 1 for the
/// ConjugacyBeta1 convention and kappa = alpha for DimensionShifted.
/// Outer derivatives act on the smooth function U -> K[g](U).

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fractal/falpha.hpp"
#include "fractal/quadrature.hpp"
#include "fractal/special_functions.hpp"
#include "fractal/staircase.hpp"

namespace fractal {

enum class OperatorKind { RLIntegral, RLDerivative, Caputo };
enum class Side { Left, Right };
enum class KernelConvention { ConjugacyBeta1, DimensionShifted };

/// Quadrature used for the kernel integral.
enum class KernelRule {
  DoubleExponential,  // tanh-sinh on the rescaled interval; tolerates endpoint singularities
  ProductTrapezoid,   // piecewise-linear interpolation times exact kernel moments
};

struct OperatorSpec {
  OperatorKind kind = OperatorKind::RLIntegral;
  Side side = Side::Left;
  double terminal = 0.0;  // a for Left, b for Right
  double beta = 0.5;
  KernelConvention convention = KernelConvention::ConjugacyBeta1;

  /// ceil(beta) for non-integer beta, beta itself for integers.
  [[nodiscard]] int n() const { return static_cast<int>(std::ceil(beta)); }

  void validate() const {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
      throw std::invalid_argument("OperatorSpec: order beta must be positive, got " +
                                  std::to_string(beta));
    }
    if (kind != OperatorKind::RLIntegral && n() > 2) {
      throw std::invalid_argument("OperatorSpec: derivative orders above 2 are not supported");
    }
  }
};

struct OperatorOptions {
  KernelRule rule = KernelRule::DoubleExponential;
  int product_nodes_per_unit = 256;
  double outer_h = 1e-4;   // step for the outer derivatives of RL
  double inner_h = 1e-6;   // step for the inner derivatives of Caputo (first order)
  double noise_tol = 1e-6;
};

/// A derivative value with its Richardson disagreement.
struct DerivativeEstimate {
  double value = 0.0;
  double error = 0.0;
  bool noisy = false;
};

namespace detail {

inline double kernel_kappa(KernelConvention c, const StaircaseFn& sf) {
  return c == KernelConvention::ConjugacyBeta1 ? 1.0 : sf.alpha();
}

/// Piecewise-linear product rule for int_0^L (L - t)^e p(t) dt on N cells,
/// p sampled at t_j = j L / N.
template <class P>
double product_trapezoid(const P& p, double e, double len, int cells) {
  const double mu = e + 1.0;
  const double h = len / cells;
  const auto n = static_cast<double>(cells);
  auto pw = [mu](double v) { return std::pow(v, mu + 1.0); };
  double sum = (pw(n - 1.0) - (n - 1.0 - mu) * std::pow(n, mu)) * p(0.0);
  for (int j = 1; j < cells; ++j) {
    const double m = n - j;
    sum += (pw(m + 1.0) - 2.0 * pw(m) + pw(m - 1.0)) * p(j * h);
  }
  sum += p(len);
  return std::pow(h, mu) / (mu * (mu + 1.0)) * sum;
}

/// int over the interval between terminal and U of |U - v|^e g(v) dv.
/// Nodes falling within relative rounding distance of the terminal are
/// dropped: g may be singular there and v cannot be resolved any closer.
template <class G>
double kernel_integral(const G& g, double e, Side side, double terminal, double u,
                       const OperatorOptions& opt) {
  if (!(e > -1.0)) throw std::domain_error("kernel exponent must exceed -1");
  const double len = side == Side::Left ? u - terminal : terminal - u;
  if (len < 0.0) {
    throw std::domain_error(std::string("operator evaluated on the wrong side of its terminal: ") +
                            (side == Side::Left ? "need S(x) >= S(a)" : "need S(x) <= S(b)"));
  }
  if (len == 0.0) return 0.0;
  const double dir = side == Side::Left ? 1.0 : -1.0;  // terminal -> U
  if (opt.rule == KernelRule::ProductTrapezoid) {
    const int cells =
        std::max(8, static_cast<int>(std::ceil(opt.product_nodes_per_unit * len - 1e-9)));
    return product_trapezoid([&](double t) { return g(terminal + dir * t); }, e, len, cells);
  }
  const double cut = std::fabs(terminal) * 1e-10;
  double acc = 0.0;
  for (const auto& nd : default_tanh_sinh()) {
    // s measures distance from the terminal, 1 - s distance from U
    const double from_terminal = len * nd.s;
    const double from_u = len * nd.one_minus_s;
    const double v = nd.s < 0.5 ? terminal + dir * from_terminal : u - dir * from_u;
    if (from_terminal <= cut || v == terminal) continue;
    acc += nd.w * std::pow(nd.one_minus_s, e) * g(v);
  }
  return acc * std::pow(len, e + 1.0);
}

}  // namespace detail

/// Riemann-Liouville integral of order `order` of a u-function.
template <class G>
double rl_integral_u(const G& g, double order, Side side, double terminal, double u,
                     double kappa = 1.0, const OperatorOptions& opt = {}) {
  if (!(order > 0.0)) throw std::domain_error("rl_integral: order must be positive");
  return reciprocal_gamma(order) * detail::kernel_integral(g, order - kappa, side, terminal, u, opt);
}

/// Riemann-Liouville derivative (+-d/du)^n I^{n-beta} of a u-function.
template <class G>
DerivativeEstimate rl_derivative_u(const G& g, double beta, Side side, double terminal, double u,
                                   double kappa = 1.0, const OperatorOptions& opt = {}) {
  if (!(beta > 0.0)) throw std::domain_error("rl_derivative: order must be positive");
  const int n = static_cast<int>(std::ceil(beta));
  const double inner = n - beta;
  const double sign = (side == Side::Right && n % 2 == 1) ? -1.0 : 1.0;
  const double lo = side == Side::Left ? terminal : -HUGE_VAL;
  const double hi = side == Side::Left ? HUGE_VAL : terminal;
  if ((side == Side::Left && u < terminal) || (side == Side::Right && u > terminal)) {
    throw std::domain_error("rl_derivative: point on the wrong side of the terminal");
  }
  DerivativeEstimate est;
  if (inner == 0.0) {
    auto [v, err] = detail::richardson_difference(g, u, n, opt.outer_h, lo, hi);
    est.value = sign * v;
    est.error = err;
  } else {
    const auto integral = [&](double v) {
      return rl_integral_u(g, inner, side, terminal, v, kappa, opt);
    };
    auto [v, err] = detail::richardson_difference(integral, u, n, opt.outer_h, lo, hi);
    est.value = sign * v;
    est.error = err;
  }
  est.noisy = est.error > 10.0 * opt.noise_tol * std::max(1.0, std::fabs(est.value));
  return est;
}

/// Caputo derivative: kernel integral of (+-d/du)^n g.
template <class G>
double caputo_derivative_u(const G& g, double beta, Side side, double terminal, double u,
                           double kappa = 1.0, const OperatorOptions& opt = {}) {
  if (!(beta > 0.0)) throw std::domain_error("caputo_derivative: order must be positive");
  const int n = static_cast<int>(std::ceil(beta));
  const double sign = (side == Side::Right && n % 2 == 1) ? -1.0 : 1.0;
  const double lo = side == Side::Left ? terminal : -HUGE_VAL;
  const double hi = side == Side::Left ? HUGE_VAL : terminal;
  const double h = n == 1 ? opt.inner_h : std::max(opt.inner_h, 1e-4);
  const auto inner_derivative = [&](double v) {
    return sign * detail::finite_difference(g, v, n, h, lo, hi);
  };
  const double inner = n - beta;
  if (inner == 0.0) return inner_derivative(u);
  return rl_integral_u(inner_derivative, inner, side, terminal, u, kappa, opt);
}

namespace detail {

inline void check_terminal_order(const OperatorSpec& spec, double u, double u_term) {
  if (spec.side == Side::Left && u < u_term) {
    throw std::domain_error("left operator requires S(x) >= S(a)");
  }
  if (spec.side == Side::Right && u > u_term) {
    throw std::domain_error("right operator requires S(x) <= S(b)");
  }
}

}  // namespace detail

inline double rl_integral(const OperatorSpec& spec, const FractalFn& f, const StaircaseFn& sf,
                          double x, const OperatorOptions& opt = {}) {
  spec.validate();
  const double u = cantor_eval(sf, x);
  const double ut = cantor_eval(sf, spec.terminal);
  detail::check_terminal_order(spec, u, ut);
  return rl_integral_u(ConjugatedFn(f, sf), spec.beta, spec.side, ut, u,
                       detail::kernel_kappa(spec.convention, sf), opt);
}

inline DerivativeEstimate rl_derivative_estimate(const OperatorSpec& spec, const FractalFn& f,
                                                 const StaircaseFn& sf, double x,
                                                 const OperatorOptions& opt = {}) {
  spec.validate();
  const double u = cantor_eval(sf, x);
  const double ut = cantor_eval(sf, spec.terminal);
  detail::check_terminal_order(spec, u, ut);
  return rl_derivative_u(ConjugatedFn(f, sf), spec.beta, spec.side, ut, u,
                         detail::kernel_kappa(spec.convention, sf), opt);
}

inline double rl_derivative(const OperatorSpec& spec, const FractalFn& f, const StaircaseFn& sf,
                            double x, const OperatorOptions& opt = {}) {
  return rl_derivative_estimate(spec, f, sf, x, opt).value;
}

inline double caputo_derivative(const OperatorSpec& spec, const FractalFn& f,
                                const StaircaseFn& sf, double x, const OperatorOptions& opt = {}) {
  spec.validate();
  const double u = cantor_eval(sf, x);
  const double ut = cantor_eval(sf, spec.terminal);
  detail::check_terminal_order(spec, u, ut);
  return caputo_derivative_u(ConjugatedFn(f, sf), spec.beta, spec.side, ut, u,
                             detail::kernel_kappa(spec.convention, sf), opt);
}

/// Dispatch on spec.kind.
inline double apply_operator(const OperatorSpec& spec, const FractalFn& f, const StaircaseFn& sf,
                             double x, const OperatorOptions& opt = {}) {
  switch (spec.kind) {
    case OperatorKind::RLIntegral:
      return rl_integral(spec, f, sf, x, opt);
    case OperatorKind::RLDerivative:
      return rl_derivative(spec, f, sf, x, opt);
    case OperatorKind::Caputo:
      return caputo_derivative(spec, f, sf, x, opt);
  }
  return 0.0;
}

/// I^beta (S - S(a))^eta = Gamma(eta+1)/Gamma(eta+beta+1) (S - S(a))^(eta+beta).
inline double power_rule_integral(double beta, double eta, const StaircaseFn& sf, double a,
                                  double x) {
  if (!(eta > -1.0)) throw std::domain_error("power_rule_integral: eta must exceed -1");
  if (!(beta > 0.0)) throw std::domain_error("power_rule_integral: beta must be positive");
  const double d = cantor_eval(sf, x) - cantor_eval(sf, a);
  if (d < 0.0) throw std::domain_error("power_rule_integral: requires S(x) >= S(a)");
  return gamma_classical(eta + 1.0) * reciprocal_gamma(eta + beta + 1.0) * std::pow(d, eta + beta);
}

/// D^beta (S - S(a))^eta = Gamma(eta+1)/Gamma(eta+1-beta) (S - S(a))^(eta-beta);
/// 0 where the denominator Gamma has a pole.
inline double power_rule_derivative(double beta, double eta, const StaircaseFn& sf, double a,
                                    double x) {
  if (!(eta > -1.0)) throw std::domain_error("power_rule_derivative: eta must exceed -1");
  const double rg = reciprocal_gamma(eta + 1.0 - beta);
  if (rg == 0.0) return 0.0;
  const double d = cantor_eval(sf, x) - cantor_eval(sf, a);
  if (d < 0.0) throw std::domain_error("power_rule_derivative: requires S(x) >= S(a)");
  return gamma_classical(eta + 1.0) * rg * std::pow(d, eta - beta);
}

enum class CompositionKind { RL_Left, RL_Right, Caputo_Left, Caputo_Right };

/// Max over the grid of |I^beta D^beta f - (f - boundary terms)| for the
/// chosen composition identity on [a, b]. Grid points are x-values; the
/// terminal itself is skipped.
inline double composition_residual(CompositionKind kind, const FractalFn& f, double beta,
                                   const StaircaseFn& sf, double a, double b,
                                   const std::vector<double>& grid,
                                   const OperatorOptions& opt = {}) {
  if (!(beta > 0.0)) throw std::domain_error("composition_residual: beta must be positive");
  const bool left = kind == CompositionKind::RL_Left || kind == CompositionKind::Caputo_Left;
  const bool caputo = kind == CompositionKind::Caputo_Left || kind == CompositionKind::Caputo_Right;
  const Side side = left ? Side::Left : Side::Right;
  const double ua = cantor_eval(sf, a);
  const double ub = cantor_eval(sf, b);
  const double ut = left ? ua : ub;
  const int n = static_cast<int>(std::ceil(beta));
  const ConjugatedFn g(f, sf);
  const double lo = left ? ut : -HUGE_VAL;
  const double hi = left ? HUGE_VAL : ut;

  const auto inner = [&](double v) {
    return caputo ? caputo_derivative_u(g, beta, side, ut, v, 1.0, opt)
                  : rl_derivative_u(g, beta, side, ut, v, 1.0, opt).value;
  };

  // boundary data at the terminal, computed with the module's own operators
  std::vector<double> boundary;
  for (int j = caputo ? 0 : 1; caputo ? j < n : j <= n; ++j) {
    if (caputo) {
      double d = detail::finite_difference(g, ut, j, j <= 1 ? opt.inner_h : 1e-4, lo, hi);
      if (!left && j % 2 == 1) d = -d;
      boundary.push_back(d);
    } else {
      const double order = beta - j;
      double v = 0.0;
      if (order < 0.0) {
        v = rl_integral_u(g, -order, side, ut, ut, 1.0, opt);
      } else if (order == 0.0) {
        v = g(ut);
      } else {
        v = rl_derivative_u(g, order, side, ut, ut, 1.0, opt).value;
      }
      boundary.push_back(v);
    }
  }

  double worst = 0.0;
  for (double x : grid) {
    const double u = cantor_eval(sf, x);
    if (u < ua || u > ub) throw std::domain_error("composition_residual: grid point outside [a, b]");
    if (u == ut) continue;
    const double lhs = rl_integral_u(inner, beta, side, ut, u, 1.0, opt);
    const double dist = left ? u - ut : ut - u;
    double rhs = g(u);
    if (caputo) {
      double fact = 1.0;
      for (int k = 0; k < n; ++k) {
        if (k > 0) fact *= k;
        rhs -= boundary[static_cast<std::size_t>(k)] / fact * std::pow(dist, k);
      }
    } else {
      for (int j = 1; j <= n; ++j) {
        const double bj = boundary[static_cast<std::size_t>(j - 1)];
        if (bj != 0.0) rhs -= bj * reciprocal_gamma(beta + 1.0 - j) * std::pow(dist, beta - j);
      }
    }
    worst = std::max(worst, std::fabs(lhs - rhs));
  }
  return worst;
}

}  // namespace fractal
