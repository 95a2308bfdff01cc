#pragma once

/// Fractal Laplace transform in the variable sigma = S(s): numeric forward
/// transform, convolution, the symbolic transform rules and the rule-based
/// inverse into Mittag-Leffler terms.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fractal/falpha.hpp"
#include "fractal/quadrature.hpp"
#include "fractal/special_functions.hpp"
#include "fractal/staircase.hpp"

namespace fractal {

/// Exact rational exponent. Kept normalised (den > 0, gcd 1) so structural
/// comparisons of transform terms are exact.
class Ratio {
 public:
  constexpr Ratio(std::int64_t num = 0, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("Ratio: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  [[nodiscard]] constexpr std::int64_t num() const { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const { return den_; }
  [[nodiscard]] constexpr double value() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  [[nodiscard]] constexpr bool is_integer() const { return den_ == 1; }

  friend constexpr Ratio operator+(Ratio a, Ratio b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend constexpr Ratio operator-(Ratio a, Ratio b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend constexpr Ratio operator-(Ratio a) { return {-a.num_, a.den_}; }
  friend constexpr bool operator==(Ratio a, Ratio b) = default;
  friend constexpr bool operator<(Ratio a, Ratio b) { return a.num_ * b.den_ < b.num_ * a.den_; }

  [[nodiscard]] std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

/// coeff * sigma^p / (sigma^q - lambda); q = 0 and lambda = 0 encode the
/// pure power coeff * sigma^p.
struct LaplaceTerm {
  double coeff = 1.0;
  Ratio p;
  Ratio q;
  double lambda = 0.0;

  [[nodiscard]] bool is_pure_power() const { return q == Ratio(0) && lambda == 0.0; }

  [[nodiscard]] double evaluate(double sigma) const {
    const double num = coeff * std::pow(sigma, p.value());
    return is_pure_power() ? num : num / (std::pow(sigma, q.value()) - lambda);
  }
};

/// Symbolic sum of transform terms in sigma.
struct LaplaceExpr {
  std::vector<LaplaceTerm> terms;

  static LaplaceExpr power(double coeff, Ratio p) { return {{LaplaceTerm{coeff, p, 0, 0.0}}}; }
  static LaplaceExpr constant(double c) { return power(c, 0); }

  [[nodiscard]] double evaluate(double sigma) const {
    double s = 0.0;
    for (const auto& t : terms) s += t.evaluate(sigma);
    return s;
  }

  /// Multiply every term by sigma^k.
  [[nodiscard]] LaplaceExpr shifted(Ratio k) const {
    LaplaceExpr out = *this;
    for (auto& t : out.terms) t.p = t.p + k;
    return out;
  }

  [[nodiscard]] LaplaceExpr scaled(double c) const {
    LaplaceExpr out = *this;
    for (auto& t : out.terms) t.coeff *= c;
    return out;
  }

  friend LaplaceExpr operator+(LaplaceExpr a, const LaplaceExpr& b) {
    a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
    return a;
  }
  friend LaplaceExpr operator-(LaplaceExpr a, const LaplaceExpr& b) { return a + b.scaled(-1.0); }

  /// Adds coefficients of identical term shapes and drops zero terms.
  [[nodiscard]] LaplaceExpr simplified() const {
    LaplaceExpr out;
    for (const auto& t : terms) {
      bool merged = false;
      for (auto& o : out.terms) {
        if (o.p == t.p && o.q == t.q && o.lambda == t.lambda) {
          o.coeff += t.coeff;
          merged = true;
          break;
        }
      }
      if (!merged) out.terms.push_back(t);
    }
    std::erase_if(out.terms, [](const LaplaceTerm& t) { return t.coeff == 0.0; });
    return out;
  }

  [[nodiscard]] std::string str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const auto& t = terms[i];
      if (i > 0) os << " + ";
      os << t.coeff << "*s^(" << t.p.str() << ")";
      if (!t.is_pure_power()) os << "/(s^(" << t.q.str() << ") - " << t.lambda << ")";
    }
    return terms.empty() ? "0" : os.str();
  }
};

/// Transform of an expression containing the unknown image F:
/// unknown_coeff * F + known.
struct SymbolicImage {
  LaplaceExpr unknown_coeff;
  LaplaceExpr known;

  friend SymbolicImage operator+(SymbolicImage a, const SymbolicImage& b) {
    return {a.unknown_coeff + b.unknown_coeff, a.known + b.known};
  }
  friend SymbolicImage operator-(SymbolicImage a, const SymbolicImage& b) {
    return {a.unknown_coeff - b.unknown_coeff, a.known - b.known};
  }
  [[nodiscard]] SymbolicImage scaled(double c) const {
    return {unknown_coeff.scaled(c), known.scaled(c)};
  }
};

/// The unknown image F itself.
inline SymbolicImage unknown_image() { return {LaplaceExpr::constant(1.0), {}}; }

enum class RuleKind { Power, RLIntegral, RLDerivative, CaputoDerivative };

/// Which transform rule to apply. `boundary` holds, for RLDerivative, the
/// values D^{beta-n+k-1} f(0) and, for CaputoDerivative, (D_F^alpha)^{k-1} f(0),
/// k = 1..n.
struct TransformRule {
  RuleKind kind = RuleKind::Power;
  Ratio beta;
  std::vector<double> boundary;

  [[nodiscard]] int n() const {
    const auto b = beta;
    if (kind == RuleKind::RLDerivative) {
      // n = [beta] + 1
      return static_cast<int>(std::floor(b.value())) + 1;
    }
    return std::max<int>(0, static_cast<int>(std::ceil(b.value())));
  }
};

/// Power(beta): image of S^beta, Gamma(1 + beta) sigma^{-beta-1}.
/// RLIntegral: sigma^{-beta} F. RLDerivative: sigma^beta F - sum_k sigma^{n-k} c_k.
/// CaputoDerivative: sigma^beta F - sum_k sigma^{beta-k} c_k.
inline SymbolicImage laplace_rule(const TransformRule& rule, const SymbolicImage& image) {
  switch (rule.kind) {
    case RuleKind::Power:
      if (!(rule.beta.value() > -1.0)) throw std::domain_error("laplace_rule: Power needs beta > -1");
      return {{}, LaplaceExpr::power(gamma_classical(1.0 + rule.beta.value()), -rule.beta - 1)};
    case RuleKind::RLIntegral:
      return {image.unknown_coeff.shifted(-rule.beta), image.known.shifted(-rule.beta)};
    case RuleKind::RLDerivative:
    case RuleKind::CaputoDerivative: {
      const int n = rule.n();
      if (static_cast<int>(rule.boundary.size()) != n) {
        throw std::invalid_argument("laplace_rule: expected " + std::to_string(n) +
                                    " boundary values, got " +
                                    std::to_string(rule.boundary.size()));
      }
      SymbolicImage out{image.unknown_coeff.shifted(rule.beta), image.known.shifted(rule.beta)};
      for (int k = 1; k <= n; ++k) {
        const Ratio exponent =
            rule.kind == RuleKind::RLDerivative ? Ratio(n - k) : rule.beta - Ratio(k);
        const double c = rule.boundary[static_cast<std::size_t>(k - 1)];
        if (c != 0.0) out.known.terms.push_back({-c, exponent, 0, 0.0});
      }
      return out;
    }
  }
  throw std::invalid_argument("laplace_rule: unsupported rule");
}

/// Convenience overload for a known image (no unknown).
inline SymbolicImage laplace_rule(const TransformRule& rule, const LaplaceExpr& known = {}) {
  return laplace_rule(rule, SymbolicImage{{}, known});
}

/// Solves image = rhs for F when the unknown's coefficient is sigma^q or
/// sigma^q - lambda.
inline LaplaceExpr solve_linear(const SymbolicImage& image, const LaplaceExpr& rhs) {
  const LaplaceExpr coeff = image.unknown_coeff.simplified();
  const LaplaceExpr numerator = (rhs - image.known).simplified();
  Ratio q;
  double lambda = 0.0;
  double lead = 1.0;
  if (coeff.terms.size() == 1 && coeff.terms[0].is_pure_power()) {
    q = coeff.terms[0].p;
    lead = coeff.terms[0].coeff;
  } else if (coeff.terms.size() == 2 && coeff.terms[0].is_pure_power() &&
             coeff.terms[1].is_pure_power()) {
    const auto& a = coeff.terms[0].p == Ratio(0) ? coeff.terms[1] : coeff.terms[0];
    const auto& b = coeff.terms[0].p == Ratio(0) ? coeff.terms[0] : coeff.terms[1];
    if (!(b.p == Ratio(0)) || !(Ratio(0) < a.p)) {
      throw std::domain_error("solve_linear: unknown coefficient must be c*(sigma^q - lambda)");
    }
    q = a.p;
    lead = a.coeff;
    lambda = -b.coeff / a.coeff;
  } else {
    throw std::domain_error("solve_linear: unsupported coefficient " + coeff.str());
  }
  LaplaceExpr out;
  for (const auto& t : numerator.terms) {
    if (!t.is_pure_power()) throw std::domain_error("solve_linear: numerator must be pure powers");
    if (lambda == 0.0) {
      out.terms.push_back({t.coeff / lead, t.p - q, 0, 0.0});
    } else {
      out.terms.push_back({t.coeff / lead, t.p, q, lambda});
    }
  }
  return out;
}

/// Inverse transform: a function of u = S(x) (optionally measured from an
/// origin S(a)), sum of coeff S^{q-p-1} E_{q,q-p}(lambda S^q) and
/// coeff S^{-p-1} / Gamma(-p).
class InverseImage {
 public:
  struct Piece {
    double coeff;
    double rho;  // power of S
    double eta;  // Mittag-Leffler parameters (eta = 0 for pure powers)
    double nu;
    double lambda;
    Ratio rho_exact;
    Ratio eta_exact;
    Ratio nu_exact;
  };

  InverseImage(const LaplaceExpr& expr, double origin = 0.0) : origin_(origin) {
    for (const auto& t : expr.terms) {
      if (t.is_pure_power()) {
        if (!(t.p < Ratio(0))) {
          throw std::domain_error("inverse_laplace: pure power sigma^" + t.p.str() +
                                  " has no decaying inverse (need p < 0)");
        }
        const Ratio rho = -t.p - 1;
        pieces_.push_back({t.coeff * reciprocal_gamma(-t.p.value()), rho.value(), 0.0, 0.0, 0.0,
                           rho, 0, 0});
        series_.emplace_back(std::nullopt);
      } else {
        if (!(t.p < t.q)) {
          throw std::domain_error("inverse_laplace: resolvent term needs p < q");
        }
        const Ratio rho = t.q - t.p - 1;
        const Ratio nu = t.q - t.p;
        pieces_.push_back({t.coeff, rho.value(), t.q.value(), nu.value(), t.lambda, rho, t.q, nu});
        series_.emplace_back(MittagLeffler(MLParams{t.q.value(), nu.value()}));
      }
    }
  }

  [[nodiscard]] const std::vector<Piece>& pieces() const { return pieces_; }
  [[nodiscard]] double origin() const { return origin_; }

  /// Value at u (the staircase coordinate, not x).
  [[nodiscard]] double at_u(double u) const {
    const double d = u - origin_;
    if (d < 0.0) throw std::domain_error("inverse_laplace: evaluated before its origin");
    double sum = 0.0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const auto& pc = pieces_[i];
      double v = pc.coeff * std::pow(d, pc.rho);
      if (series_[i]) v *= (*series_[i])(pc.lambda * std::pow(d, pc.eta));
      sum += v;
    }
    return sum;
  }

  [[nodiscard]] double operator()(const StaircaseFn& sf, double x) const {
    return at_u(cantor_eval(sf, x));
  }

  /// As a FractalFn in staircase form.
  [[nodiscard]] FractalFn as_fractal_fn() const {
    auto self = *this;
    return FractalFn::of_staircase([self](double u) { return self.at_u(u); });
  }

 private:
  double origin_;
  std::vector<Piece> pieces_;
  std::vector<std::optional<MittagLeffler>> series_;
};

inline InverseImage inverse_laplace(const LaplaceExpr& expr, double origin = 0.0) {
  return InverseImage(expr, origin);
}

struct LaplaceResult {
  double value = 0.0;
  double tail_bound = 0.0;
  double truncation = 0.0;  // S(T)
};

/// int_0^T f(x) e^{-sigma S(x)} d_F^alpha x with sigma * S(T) >= 36, by
/// tanh-sinh panels in the u-coordinate. The tail bound is
/// |g(S(T))| e^{-sigma S(T)} / sigma (valid for polynomially bounded g).
inline LaplaceResult laplace_numeric(const FractalFn& f, const StaircaseFn& sf, double sigma,
                                     double tail_tol = 1e-10, double decay = 36.0) {
  if (!(sigma > 0.0)) throw std::domain_error("laplace_numeric: sigma must be positive");
  if (sf.spec().extension_rule == ExtensionRule::UnitInterval) {
    throw std::domain_error("laplace_numeric: needs the SelfSimilarTiling extension");
  }
  const double ut = std::ceil(decay / sigma);
  const double t = cantor_quantile(sf, ut);
  const ConjugatedFn g(f, sf);
  LaplaceResult r;
  r.truncation = ut;
  r.value = integrate([&](double u) { return g(u) * std::exp(-sigma * u); }, 0.0, cantor_eval(sf, t),
                      QuadratureRule{QuadratureKind::TanhSinh});
  r.tail_bound = std::fabs(g(ut)) * std::exp(-sigma * ut) / sigma;
  if (!std::isfinite(r.value)) throw std::domain_error("laplace_numeric: non-finite integrand");
  if (r.tail_bound > tail_tol) {
    throw std::domain_error("laplace_numeric: tail bound " + std::to_string(r.tail_bound) +
                            " exceeds tolerance");
  }
  return r;
}

/// (f * g)(x) = int_0^x f(S(x) - S(tau)) g(S(tau)) d_F^alpha tau. Both
/// arguments are functions of the staircase coordinate.
template <class F, class G>
double convolve(const F& phi_f, const G& phi_g, const StaircaseFn& sf, double x) {
  const double ux = cantor_eval(sf, x);
  if (ux < 0.0) throw std::domain_error("convolve: requires S(x) >= 0");
  return integrate([&](double v) { return phi_f(ux - v) * phi_g(v); }, 0.0, ux,
                   QuadratureRule{QuadratureKind::TanhSinh});
}

}  // namespace fractal
