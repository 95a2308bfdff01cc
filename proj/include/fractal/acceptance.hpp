#pragma once

/// The nine acceptance criteria as library functions, shared by the
/// acceptance test binary and `fractal_calc verify`.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fractal/classical.hpp"
#include "fractal/falpha.hpp"
#include "fractal/figures.hpp"
#include "fractal/laplace.hpp"
#include "fractal/operators.hpp"
#include "fractal/output.hpp"
#include "fractal/solutions.hpp"
#include "fractal/special_functions.hpp"
#include "fractal/staircase.hpp"

namespace fractal {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct AcceptanceOptions {
  int depth = 53;
  std::uint64_t seed = 20240601;
};

namespace detail {

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

inline CriterionResult finish(int id, std::string name, double measured, double tol,
                              std::string detail = {}) {
  return {id, std::move(name), measured <= tol && std::isfinite(measured), measured, tol,
          std::move(detail)};
}

inline u128 random_below(std::mt19937_64& rng, u128 bound) {
  const u128 r = (static_cast<u128>(rng()) << 64) | rng();
  return r % bound;
}

}  // namespace detail

/// 1. Staircase values at exact rationals, symmetry and self-similarity.
inline CriterionResult criterion_staircase(const AcceptanceOptions& o) {
  const auto sf = StaircaseFn::cantor(o.depth);
  const double tol = std::ldexp(1.0, -50);
  const std::vector<std::pair<ExactRational, double>> points{
      {make_rational(0, 1), 0.0},   {make_rational(1, 4), 1.0 / 3.0},
      {make_rational(1, 3), 0.5},   {make_rational(1, 2), 0.5},
      {make_rational(2, 3), 0.5},   {make_rational(1, 1), 1.0}};
  double worst_points = 0.0;
  for (const auto& [x, expect] : points) {
    worst_points = std::max(worst_points, std::fabs(cantor_eval(sf, x) - expect));
  }
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<int> two(0, 40);
  std::uniform_int_distribution<int> three(0, 30);
  double worst_sym = 0.0;
  double worst_self = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const u128 den = (u128{1} << two(rng)) * detail::pow3(three(rng));
    const u128 num = detail::random_below(rng, den + 1);
    const double s = cantor_eval(sf, ExactRational{num, den});
    const double s_mirror = cantor_eval(sf, ExactRational{den - num, den});
    const double s_third = cantor_eval(sf, ExactRational{num, den * 3});
    worst_sym = std::max(worst_sym, std::fabs(s + s_mirror - 1.0));
    worst_self = std::max(worst_self, std::fabs(s_third - 0.5 * s));
  }
  const double measured = std::max({worst_points, worst_sym, worst_self});
  return detail::finish(1, "staircase exactness", measured, tol,
                        "points " + detail::sci(worst_points) + ", symmetry " +
                            detail::sci(worst_sym) + ", self-similarity " +
                            detail::sci(worst_self));
}

/// 2. Beta by quadrature against Gamma, and the two quadrature orientations.
inline CriterionResult criterion_beta(const AcceptanceOptions& o) {
  const auto sf = StaircaseFn::cantor(o.depth);
  const double tol = 1e-4;
  double worst_rel = 0.0;
  double worst_sym = 0.0;
  for (double r : {0.5, 1.0, 1.5, 2.0}) {
    for (double w : {0.5, 1.0, 1.5, 2.0}) {
      const double exact = beta_fractal(r, w);
      const double direct = beta_fractal_quadrature(r, w, sf, BetaOrientation::Direct);
      const double mirrored = beta_fractal_quadrature(r, w, sf, BetaOrientation::Mirrored);
      worst_rel = std::max(worst_rel, std::fabs(direct - exact) / exact);
      worst_sym = std::max(worst_sym, std::fabs(direct - mirrored));
    }
  }
  return detail::finish(2, "beta identities", std::max(worst_rel, worst_sym), tol,
                        "relative " + detail::sci(worst_rel) + ", symmetry " +
                            detail::sci(worst_sym));
}

/// 3. Mittag-Leffler special cases on u in [0, 3].
inline CriterionResult criterion_mittag_leffler(const AcceptanceOptions& o) {
  const auto sf = StaircaseFn::cantor(o.depth);
  std::vector<double> xs;
  for (double u : linspace(0.0, 3.0, 64)) xs.push_back(cantor_quantile(sf, u));
  const GridFunction grid(xs, std::vector<double>(xs.size(), 0.0));
  const double m = ml_special_case_residuals(sf, grid).max_abs();
  double literal = 0.0;
  for (double x : xs) literal = std::max(literal, ml_eta2_literal_deviation(cantor_eval(sf, x)));
  return detail::finish(3, "mittag-leffler special cases", m, 1e-8,
                        "64 points, u in [0, 3]; eta=2 cases at argument u^2 (with argument u "
                        "read literally the deviation is " + detail::sci(literal) + ")");
}

/// 4. Power rules for the RL integral and derivative.
inline CriterionResult criterion_power_rules(const AcceptanceOptions& o) {
  const auto sf = StaircaseFn::cantor(o.depth);
  double worst = 0.0;
  for (double eta : {0.0, 0.5, 1.0, 2.0}) {
    const auto f = FractalFn::of_staircase([eta](double u) { return std::pow(u, eta); });
    for (double beta : {0.3, 0.5}) {
      const OperatorSpec integ{OperatorKind::RLIntegral, Side::Left, 0.0, beta};
      const OperatorSpec der{OperatorKind::RLDerivative, Side::Left, 0.0, beta};
      for (double u : linspace(0.2, 1.0, 10)) {
        const double x = cantor_quantile(sf, u);
        const double ci = power_rule_integral(beta, eta, sf, 0.0, x);
        const double cd = power_rule_derivative(beta, eta, sf, 0.0, x);
        worst = std::max(worst, std::fabs(rl_integral(integ, f, sf, x) - ci) / std::fabs(ci));
        worst = std::max(worst, std::fabs(rl_derivative(der, f, sf, x) - cd) / std::fabs(cd));
      }
    }
  }
  return detail::finish(4, "power rules", worst, 1e-3,
                        "max relative error, eta in {0,0.5,1,2}, beta in {0.3,0.5}");
}

/// 5. The four composition identities for f = S^2, beta = 1/2 on [0, 1].
inline CriterionResult criterion_composition(const AcceptanceOptions& o) {
  const auto sf = StaircaseFn::cantor(o.depth);
  const auto f = FractalFn::of_staircase([](double u) { return u * u; });
  std::vector<double> grid;
  for (int i = 0; i < 16; ++i) grid.push_back(cantor_quantile(sf, (i + 0.5) / 16.0));
  double worst = 0.0;
  std::string summary;
  const char* names[] = {"RL left", "RL right", "Caputo left", "Caputo right"};
  int idx = 0;
  for (auto k : {CompositionKind::RL_Left, CompositionKind::RL_Right, CompositionKind::Caputo_Left,
                 CompositionKind::Caputo_Right}) {
    const double r = composition_residual(k, f, 0.5, sf, 0.0, 1.0, grid);
    worst = std::max(worst, r);
    summary += std::string(idx > 0 ? ", " : "") + names[idx] + " " + detail::sci(r);
    ++idx;
  }
  return detail::finish(5, "composition identities", worst, 5e-3, summary);
}

/// 6. Laplace transform of powers and of the RL integral.
inline CriterionResult criterion_laplace(const AcceptanceOptions& o) {
  const auto sf = StaircaseFn::cantor(o.depth);
  double worst_power = 0.0;
  for (double beta : {0.0, 0.5, 1.0, 2.0}) {
    const auto f = FractalFn::of_staircase([beta](double u) { return std::pow(u, beta); });
    for (double sigma : {1.0, 2.0, 5.0}) {
      const double exact = gamma_classical(1.0 + beta) / std::pow(sigma, beta + 1.0);
      const double v = laplace_numeric(f, sf, sigma).value;
      worst_power = std::max(worst_power, std::fabs(v - exact) / exact);
    }
  }
  const OperatorSpec integ{OperatorKind::RLIntegral, Side::Left, 0.0, 0.5};
  const auto one = FractalFn::of_staircase([](double) { return 1.0; });
  const auto i_one = FractalFn::of_x([&](double x) { return rl_integral(integ, one, sf, x); });
  double worst_lemma = 0.0;
  for (double sigma : {1.0, 2.0}) {
    const double exact = std::pow(sigma, -0.5) / sigma;
    const double v = laplace_numeric(i_one, sf, sigma).value;
    worst_lemma = std::max(worst_lemma, std::fabs(v - exact) / exact);
  }
  const bool ok = worst_power <= 1e-4 && worst_lemma <= 1e-3;
  CriterionResult r{6,
                    "laplace rules",
                    ok,
                    std::max(worst_power, worst_lemma),
                    1e-4,
                    "powers " + detail::sci(worst_power) + " (tol 1e-4), lemma " +
                        detail::sci(worst_lemma) + " (tol 1e-3)"};
  return r;
}

/// 7. Identity map against the Grunwald-Letnikov oracle on 1, x, x^2.
inline CriterionResult criterion_classical(const AcceptanceOptions& /*o*/) {
  const auto sf = StaircaseFn::identity();
  const double b = 1.0;
  double worst = 0.0;
  for (int deg = 0; deg <= 2; ++deg) {
    const auto phi = [deg](double v) { return std::pow(v, deg); };
    const auto slope = [deg](double v) { return deg == 0 ? 0.0 : deg * std::pow(v, deg - 1); };
    const auto f = FractalFn::of_x(phi);
    for (double beta : {0.3, 0.5, 0.8}) {
      for (double x : {0.25, 0.5, 0.75}) {
        const auto check = [&](double got, double ref) {
          worst = std::max(worst, std::fabs(got - ref) / std::max(1.0, std::fabs(ref)));
        };
        for (Side side : {Side::Left, Side::Right}) {
          const bool left = side == Side::Left;
          const double t = left ? 0.0 : b;
          OperatorSpec spec{OperatorKind::RLIntegral, side, t, beta};
          const auto gl = [&](double order) {
            return left ? classical::left_gl(phi, order, t, x) : classical::right_gl(phi, order, t, x);
          };
          check(rl_integral(spec, f, sf, x), gl(-beta));
          spec.kind = OperatorKind::RLDerivative;
          check(rl_derivative(spec, f, sf, x), gl(beta));
          spec.kind = OperatorKind::Caputo;
          const double cap = left ? classical::left_caputo_gl(phi, beta, t, x, phi(t), slope(t))
                                  : classical::right_caputo_gl(phi, beta, t, x, phi(t), slope(t));
          check(caputo_derivative(spec, f, sf, x), cap);
        }
      }
    }
  }
  // the documented spot value: D^{1/2} x^2 = Gamma(3)/Gamma(5/2) x^{3/2}
  const OperatorSpec der{OperatorKind::RLDerivative, Side::Left, 0.0, 0.5};
  const auto sq = FractalFn::of_x([](double v) { return v * v; });
  const double spot = rl_derivative(der, sq, sf, 0.64);
  const double spot_ref = 1.5045055561273502 * std::pow(0.64, 1.5);
  worst = std::max(worst, std::fabs(spot - spot_ref) / spot_ref);
  return detail::finish(7, "classical degeneration", worst, 1e-3,
                        "RL integral/derivative and Caputo, both sides, degrees 0-2");
}

/// 8. The four examples: residual, example-4 structure, gap plateau.
inline CriterionResult criterion_examples(const AcceptanceOptions& o) {
  const auto sf = StaircaseFn::cantor(o.depth);
  double worst = 0.0;
  bool structure = false;
  double plateau = 0.0;
  std::string summary;
  for (int id = 1; id <= 4; ++id) {
    const auto r = solve_example(id, sf);
    worst = std::max(worst, r.max_residual);
    plateau = std::max(plateau, gap_plateau_deviation(id, sf));
    if (id == 4) structure = example4_structure_matches(r);
    summary += "ex" + std::to_string(id) + " residual " + detail::sci(r.max_residual) +
              " reference-formula discrepancy " + detail::sci(r.reference_discrepancy) + "; ";
  }
  summary += std::string("ex4 structure ") + (structure ? "ok" : "MISMATCH") + "; plateau " +
            detail::sci(plateau);
  const double tol = 1e-2;
  return {8, "examples", worst <= tol && structure && plateau == 0.0, worst, tol, summary};
}

/// 9. Two figure generations give identical CSV bytes.
inline CriterionResult criterion_determinism(const AcceptanceOptions& o) {
  FigureOptions fo;
  fo.depth = o.depth;
  fo.count = 101;
  const auto first = figure_datasets(fo);
  const auto second = figure_datasets(fo);
  std::size_t differing = first.size() == second.size() ? 0 : 1;
  for (std::size_t i = 0; i < std::min(first.size(), second.size()); ++i) {
    if (to_csv(first[i].table) != to_csv(second[i].table)) ++differing;
  }
  return {9, "determinism", differing == 0, static_cast<double>(differing), 0.0,
          std::to_string(first.size()) + " datasets compared"};
}

inline CriterionResult run_criterion(int id, const AcceptanceOptions& o = {}) {
  switch (id) {
    case 1: return criterion_staircase(o);
    case 2: return criterion_beta(o);
    case 3: return criterion_mittag_leffler(o);
    case 4: return criterion_power_rules(o);
    case 5: return criterion_composition(o);
    case 6: return criterion_laplace(o);
    case 7: return criterion_classical(o);
    case 8: return criterion_examples(o);
    case 9: return criterion_determinism(o);
    default: throw std::invalid_argument("run_criterion: id must be 1..9");
  }
}

inline constexpr int criterion_count = 9;

inline std::vector<CriterionResult> run_all(const AcceptanceOptions& o = {}) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= criterion_count; ++id) {
    try {
      out.push_back(run_criterion(id, o));
    } catch (const std::exception& e) {
      out.push_back({id, "criterion " + std::to_string(id), false, HUGE_VAL, 0.0,
                     std::string("error: ") + e.what()});
    }
  }
  return out;
}

/// "[PASS] 3 mittag-leffler special cases: measured 1.2e-15 (tol 1e-08) ..."
inline std::string format_result(const CriterionResult& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "[%s] %d %s: measured %.3e (tol %.1e)", r.passed ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.measured, r.tolerance);
  return std::string(buf) + (r.detail.empty() ? "" : " | " + r.detail);
}

}  // namespace fractal
