#pragma once

/// Fixed (non-adaptive) quadrature rules. Everything here is deterministic:
/// the same call always visits the same nodes in the same order, which keeps
/// CSV output byte-stable and makes integrals smooth in their limits.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fractal {

enum class QuadratureKind { GaussLegendre, Trapezoid, TanhSinh };

struct QuadratureRule {
  QuadratureKind kind = QuadratureKind::GaussLegendre;
  /// Nodes per unit length of the integration interval (GaussLegendre and
  /// Trapezoid). TanhSinh uses one double-exponential panel per unit.
  int nodes_per_unit = 64;
};

struct GaussLegendreNodes {
  std::vector<double> x;  // on [-1, 1]
  std::vector<double> w;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
inline GaussLegendreNodes gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussLegendreNodes r;
  r.x.resize(static_cast<std::size_t>(n));
  r.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    r.x[lo] = -z;
    r.x[hi] = z;
    r.w[lo] = 2.0 / ((1.0 - z * z) * dp * dp);
    r.w[hi] = r.w[lo];
  }
  return r;
}

/// A node of the unit-interval tanh-sinh rule. Both s and 1 - s are stored
/// to full relative precision, so endpoint singularities can be evaluated
/// without cancellation.
struct UnitNode {
  double s;
  double one_minus_s;
  double w;
};

/// Tanh-sinh rule on [0, 1] with step h = 2^-level and |t| <= t_max.
inline std::vector<UnitNode> tanh_sinh_unit(int level = 4, double t_max = 4.5) {
  const double h = std::ldexp(1.0, -level);
  const double half_pi = std::numbers::pi / 2.0;
  std::vector<UnitNode> nodes;
  const int k_max = static_cast<int>(std::floor(t_max / h));
  for (int k = -k_max; k <= k_max; ++k) {
    const double t = k * h;
    const double y = half_pi * std::sinh(std::fabs(t));
    // 1 - tanh(y) = 2 e^{-2y} / (1 + e^{-2y})
    const double e = std::exp(-2.0 * y);
    const double small = e / (1.0 + e);       // (1 - tanh y) / 2
    const double large = 1.0 / (1.0 + e);     // (1 + tanh y) / 2
    const double cy = std::cosh(y);
    const double w = h * half_pi * std::cosh(t) / (cy * cy) / 2.0;
    if (!(w > 0.0) || small == 0.0) continue;
    if (t < 0) {
      nodes.push_back({small, large, w});
    } else {
      nodes.push_back({large, small, w});
    }
  }
  return nodes;
}

inline const std::vector<UnitNode>& default_tanh_sinh() {
  static const std::vector<UnitNode> nodes = tanh_sinh_unit();
  return nodes;
}

inline const GaussLegendreNodes& gauss_legendre_16() {
  static const GaussLegendreNodes nodes = gauss_legendre(16);
  return nodes;
}

namespace detail {

inline int panel_count(double length, double per_unit) {
  return std::max(1, static_cast<int>(std::ceil(length * per_unit - 1e-9)));
}

}  // namespace detail

/// Integral of f over [a, b] with the given rule. f is called with a point
/// strictly inside the interval for TanhSinh and GaussLegendre.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureRule& rule = {}) {
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("integrate: limits must be finite");
  }
  if (a == b) return 0.0;
  const double len = b - a;
  double sum = 0.0;
  switch (rule.kind) {
    case QuadratureKind::GaussLegendre: {
      const auto& gl = gauss_legendre_16();
      const int panels = detail::panel_count(len, std::max(1, rule.nodes_per_unit) / 16.0);
      const double ph = len / panels;
      for (int p = 0; p < panels; ++p) {
        const double lo = a + p * ph;
        const double mid = lo + ph / 2.0;
        double acc = 0.0;
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
          acc += gl.w[i] * f(mid + gl.x[i] * ph / 2.0);
        }
        sum += acc * ph / 2.0;
      }
      return sum;
    }
    case QuadratureKind::Trapezoid: {
      const int n = detail::panel_count(len, std::max(1, rule.nodes_per_unit));
      const double step = len / n;
      sum = 0.5 * (f(a) + f(b));
      for (int i = 1; i < n; ++i) sum += f(a + i * step);
      return sum * step;
    }
    case QuadratureKind::TanhSinh: {
      const auto& nodes = default_tanh_sinh();
      const int panels = detail::panel_count(len, 1.0);
      const double ph = len / panels;
      for (int p = 0; p < panels; ++p) {
        const double lo = a + p * ph;
        const double hi = p + 1 == panels ? b : lo + ph;
        double acc = 0.0;
        for (const auto& nd : nodes) {
          const double x = nd.s < 0.5 ? lo + ph * nd.s : hi - ph * nd.one_minus_s;
          if (x <= lo || x >= hi) continue;
          acc += nd.w * f(x);
        }
        sum += acc * ph;
      }
      return sum;
    }
  }
  return sum;
}

}  // namespace fractal
