#pragma once

/// Gamma, Beta and two-parameter Mittag-Leffler functions on the fractal.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fractal/falpha.hpp"
#include "fractal/staircase.hpp"

namespace fractal {

inline bool is_nonpositive_integer(double z) { return z <= 0.0 && z == std::floor(z); }

/// Classical Gamma. Poles at 0, -1, -2, ... raise std::domain_error.
inline double gamma_classical(double z) {
  if (std::isnan(z)) throw std::domain_error("gamma_classical: NaN argument");
  if (is_nonpositive_integer(z)) {
    throw std::domain_error("gamma_classical: pole at z = " + std::to_string(z));
  }
  return std::tgamma(z);
}

/// 1/Gamma(z), entire: 0 at the poles, log-space for large z.
inline double reciprocal_gamma(double z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z > 170.0) return std::exp(-std::lgamma(z));
  return 1.0 / std::tgamma(z);
}

/// How Gamma_F^alpha reads its argument. StaircaseComposed evaluates
/// Gamma(S(x)) (the integral definition depends on x only through S(x));
/// RawArgument evaluates Gamma(x) for real parameters such as beta or eta+1.
enum class GammaMode { RawArgument, StaircaseComposed };

inline double gamma_fractal(double x, GammaMode mode, const StaircaseFn& sf) {
  const double arg = mode == GammaMode::StaircaseComposed ? cantor_eval(sf, x) : x;
  return gamma_classical(arg);
}

/// Integrand of the fractal Gamma integral for a given x, as a function of t.
inline FractalFn gamma_integrand(const StaircaseFn& sf, double x) {
  const double power = cantor_eval(sf, x) - 1.0;
  return FractalFn::of_staircase([power](double u) { return std::exp(-u) * std::pow(u, power); });
}

/// B_F^alpha(r, w) through Gamma(r) Gamma(w) / Gamma(r + w).
inline double beta_fractal(double r, double w) {
  if (!(r > 0.0) || !(w > 0.0)) {
    throw std::domain_error("beta_fractal: r and w must be positive");
  }
  if (r + w > 100.0) {
    return std::exp(std::lgamma(r) + std::lgamma(w) - std::lgamma(r + w));
  }
  return gamma_classical(r) * gamma_classical(w) / gamma_classical(r + w);
}

/// Which side of the symmetry substitution S(x) -> 1 - S(y) to integrate.
enum class BetaOrientation { Direct, Mirrored };

/// B_F^alpha(r, w) as the F^alpha-integral over [0, 1] of
/// S^{r-1} (1 - S)^{w-1} (Direct) or (1 - S)^{r-1} S^{w-1} (Mirrored).
inline double beta_fractal_quadrature(double r, double w, const StaircaseFn& sf,
                                      BetaOrientation orientation = BetaOrientation::Direct) {
  if (!(r > 0.0) || !(w > 0.0)) {
    throw std::domain_error("beta_fractal_quadrature: r and w must be positive");
  }
  const double p = orientation == BetaOrientation::Direct ? r - 1.0 : w - 1.0;
  const double q = orientation == BetaOrientation::Direct ? w - 1.0 : r - 1.0;
  const auto integrand =
      FractalFn::of_staircase([p, q](double u) { return std::pow(u, p) * std::pow(1.0 - u, q); });
  return f_alpha_integral(integrand, sf, 0.0, 1.0, QuadratureRule{QuadratureKind::TanhSinh});
}

struct MLParams {
  double eta = 1.0;
  double nu = 1.0;
  double tol = 1e-15;
  int max_terms = 512;

  void validate() const {
    if (!(eta > 0.0)) throw std::invalid_argument("MLParams: eta must be positive");
    if (max_terms < 16) throw std::invalid_argument("MLParams: max_terms must be >= 16");
    if (!(tol > 0.0)) throw std::invalid_argument("MLParams: tol must be positive");
  }
};

struct MLResult {
  double value = 0.0;
  int terms = 0;
  bool converged = false;
};

inline constexpr double ml_default_z_max = 50.0;

/// Series evaluator for E_{eta,nu}(z) = sum_k z^k / Gamma(eta k + nu) with
/// the reciprocal Gammas tabulated once.
class MittagLeffler {
 public:
  explicit MittagLeffler(MLParams p, double z_max = ml_default_z_max) : p_(p), z_max_(z_max) {
    p_.validate();
    const auto n = static_cast<std::size_t>(p_.max_terms);
    rgamma_.resize(n);
    log_rgamma_.resize(n);
    sign_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double arg = p_.eta * static_cast<double>(k) + p_.nu;
      rgamma_[k] = reciprocal_gamma(arg);
      if (rgamma_[k] == 0.0 && !is_nonpositive_integer(arg)) {
        int sgn = 1;
        log_rgamma_[k] = -lgamma_r(arg, sgn);
        sign_[k] = sgn;
      } else {
        log_rgamma_[k] = rgamma_[k] == 0.0 ? -HUGE_VAL : std::log(std::fabs(rgamma_[k]));
        sign_[k] = rgamma_[k] < 0.0 ? -1 : 1;
      }
    }
  }

  [[nodiscard]] const MLParams& params() const { return p_; }

  [[nodiscard]] MLResult evaluate(double z) const {
    if (!(std::fabs(z) <= z_max_)) {
      throw std::domain_error("mittag_leffler: |z| = " + std::to_string(std::fabs(z)) +
                              " exceeds the series domain " + std::to_string(z_max_));
    }
    MLResult r;
    double sum = 0.0;
    double zpow = 1.0;
    const double log_abs_z = std::log(std::fabs(z));
    for (int k = 0; k < p_.max_terms; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      double term = 0.0;
      if (k > 0) zpow *= z;
      if (rgamma_[kk] != 0.0 && std::isfinite(zpow)) {
        term = zpow * rgamma_[kk];
      } else if (z != 0.0 && log_rgamma_[kk] != -HUGE_VAL) {
        const double mag = std::exp(k * log_abs_z + log_rgamma_[kk]);
        const bool neg = (sign_[kk] < 0) != (z < 0.0 && (k % 2 == 1));
        term = neg ? -mag : mag;
      }
      sum += term;
      r.terms = k + 1;
      if (z == 0.0 || (k >= 16 && std::fabs(term) <= p_.tol * std::fabs(sum))) {
        r.converged = true;
        break;
      }
    }
    r.value = sum;
    return r;
  }

  /// Value only; throws when the series did not reach the tolerance.
  double operator()(double z) const {
    const auto r = evaluate(z);
    if (!r.converged) {
      throw std::runtime_error("mittag_leffler: series did not converge within " +
                               std::to_string(p_.max_terms) + " terms at z = " +
                               std::to_string(z));
    }
    return r.value;
  }

 private:
  static double lgamma_r(double x, int& sign) {
    sign = (x > 0.0 || static_cast<long long>(std::floor(x)) % 2 == 0) ? 1 : -1;
    return std::lgamma(x);
  }

  MLParams p_;
  double z_max_;
  std::vector<double> rgamma_;
  std::vector<double> log_rgamma_;
  std::vector<int> sign_;
};

/// E_{eta,nu}(z) with a convergence flag. Callers pass z = S(x) (or any real
/// argument such as lambda S(x)^q); the series itself is staircase-agnostic.
inline MLResult mittag_leffler(const MLParams& p, double z) { return MittagLeffler(p).evaluate(z); }

/// Per-point max of |E_{1,1}(u) - e^u|, |E_{1,2}(u) - (e^u - 1)/u|,
/// |E_{2,1}(u^2) - cosh u|, |E_{2,2}(u^2) - sinh(u)/u| with u = S(x).
/// The eta = 2 cases take u^2: sum u^{2k}/(2k)! is cosh u.
inline GridFunction ml_special_case_residuals(const StaircaseFn& sf, const GridFunction& grid) {
  const MittagLeffler e11({1.0, 1.0});
  const MittagLeffler e12({1.0, 2.0});
  const MittagLeffler e21({2.0, 1.0});
  const MittagLeffler e22({2.0, 2.0});
  std::vector<double> res;
  res.reserve(grid.size());
  for (double x : grid.xs) {
    const double u = cantor_eval(sf, x);
    const double expm1_over_u = u == 0.0 ? 1.0 : std::expm1(u) / u;
    const double sinh_over_u = u == 0.0 ? 1.0 : std::sinh(u) / u;
    const double r = std::max({std::fabs(e11(u) - std::exp(u)), std::fabs(e12(u) - expm1_over_u),
                               std::fabs(e21(u * u) - std::cosh(u)),
                               std::fabs(e22(u * u) - sinh_over_u)});
    res.push_back(r);
  }
  return GridFunction(grid.xs, std::move(res), "ml_special_case_residual");
}

/// The E_{1,2} special case in its literal form, e^{S-1}/S, kept for the
/// discrepancy report against the series.
inline double ml_e12_literal(double u) { return std::exp(u - 1.0) / u; }

/// max(|E_{2,1}(u) - cosh u|, |E_{2,2}(u) - sinh(u)/u|): the eta = 2 cases
/// read with argument u instead of u^2. Nonzero except at u = 0, 1.
inline double ml_eta2_literal_deviation(double u) {
  const MittagLeffler e21({2.0, 1.0});
  const MittagLeffler e22({2.0, 2.0});
  const double sinh_over_u = u == 0.0 ? 1.0 : std::sinh(u) / u;
  return std::max(std::fabs(e21(u) - std::cosh(u)), std::fabs(e22(u) - sinh_over_u));
}

}  // namespace fractal
