#pragma once

/// Classical (alpha = 1) fractional operators by Grunwald-Letnikov sums.
/// Used as an oracle independent of the kernel-quadrature route: nothing
/// here touches the staircase, the quadrature rules or the Gamma function.

#include <cmath>
#include <stdexcept>

namespace fractal::classical {

struct GLOptions {
  double h = 2e-5;         // finest step
  bool richardson = true;  // combine steps h and 2h (first order -> second order)
};

namespace detail {

/// h^-order * sum_k w_k phi(U -/+ k h), w_0 = 1, w_k = w_{k-1} (1 - (order+1)/k),
/// over [terminal, U] (left) or [U, terminal] (right). phi vanishes beyond
/// the terminal. order < 0 gives the Riemann-Liouville integral of -order.
template <class Phi>
double gl_sum(const Phi& phi, double order, double terminal, double u, double h, bool left) {
  const double len = left ? u - terminal : terminal - u;
  if (len < 0.0) throw std::domain_error("grunwald_letnikov: point on the wrong side of terminal");
  const auto n = static_cast<long>(std::floor(len / h + 1e-9));
  double w = 1.0;
  double sum = 0.0;
  for (long k = 0; k <= n; ++k) {
    if (k > 0) w *= 1.0 - (order + 1.0) / static_cast<double>(k);
    sum += w * phi(left ? u - static_cast<double>(k) * h : u + static_cast<double>(k) * h);
  }
  return sum * std::pow(h, -order);
}

template <class Phi>
double gl(const Phi& phi, double order, double terminal, double u, const GLOptions& opt,
          bool left) {
  if (u == terminal) return order < 0.0 ? 0.0 : gl_sum(phi, order, terminal, u, opt.h, left);
  // keep the grid aligned with the terminal so the last sample sits on it
  const double len = std::fabs(u - terminal);
  const double steps = std::ceil(len / opt.h);
  const double h = len / steps;
  const double fine = gl_sum(phi, order, terminal, u, h, left);
  if (!opt.richardson) return fine;
  const double coarse = gl_sum(phi, order, terminal, u, 2.0 * h, left);
  return 2.0 * fine - coarse;
}

}  // namespace detail

/// Left Riemann-Liouville derivative (order > 0) or integral (order < 0).
template <class Phi>
double left_gl(const Phi& phi, double order, double terminal, double u, const GLOptions& opt = {}) {
  return detail::gl(phi, order, terminal, u, opt, true);
}

template <class Phi>
double right_gl(const Phi& phi, double order, double terminal, double u,
                const GLOptions& opt = {}) {
  return detail::gl(phi, order, terminal, u, opt, false);
}

/// Left Caputo derivative of order in (0, 2): GL derivative of phi minus its
/// Taylor polynomial at the terminal (values supplied by the caller).
template <class Phi>
double left_caputo_gl(const Phi& phi, double order, double terminal, double u, double value0,
                      double slope0 = 0.0, const GLOptions& opt = {}) {
  if (!(order > 0.0 && order < 2.0)) throw std::domain_error("left_caputo_gl: order in (0,2)");
  const bool second = order > 1.0;
  auto shifted = [&](double v) {
    return phi(v) - value0 - (second ? slope0 * (v - terminal) : 0.0);
  };
  return left_gl(shifted, order, terminal, u, opt);
}

template <class Phi>
double right_caputo_gl(const Phi& phi, double order, double terminal, double u, double value0,
                       double slope0 = 0.0, const GLOptions& opt = {}) {
  if (!(order > 0.0 && order < 2.0)) throw std::domain_error("right_caputo_gl: order in (0,2)");
  const bool second = order > 1.0;
  auto shifted = [&](double v) {
    return phi(v) - value0 - (second ? slope0 * (v - terminal) : 0.0);
  };
  return right_gl(shifted, order, terminal, u, opt);
}

}  // namespace fractal::classical
