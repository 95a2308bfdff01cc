#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fractal/classical.hpp"
#include "fractal/operators.hpp"

using namespace fractal;

namespace {

FractalFn power_of_s(double eta) {
  return FractalFn::of_staircase([eta](double u) { return std::pow(u, eta); });
}

const auto kCantor = StaircaseFn::cantor();

}  // namespace

TEST(OperatorSpec, Validation) {
  OperatorSpec s;
  s.beta = 0.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.beta = 2.5;
  s.kind = OperatorKind::RLDerivative;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.beta = 4.0 / 3.0;
  EXPECT_NO_THROW(s.validate());
  EXPECT_EQ(s.n(), 2);
}

TEST(Operators, FrozenPowerRuleValues) {
  // D^{0.3} and I^{0.3} of S^2 at S(x) = 0.64
  const double x = cantor_quantile(kCantor, 0.64);
  const auto sq = power_of_s(2.0);
  const OperatorSpec der{OperatorKind::RLDerivative, Side::Left, 0.0, 0.3};
  const OperatorSpec integ{OperatorKind::RLIntegral, Side::Left, 0.0, 0.3};
  const OperatorSpec cap{OperatorKind::Caputo, Side::Left, 0.0, 0.3};
  EXPECT_NEAR(rl_derivative(der, sq, kCantor, x), 0.60631147029863505, 1e-9);
  EXPECT_NEAR(rl_integral(integ, sq, kCantor, x), 0.26702533608487897, 1e-10);
  EXPECT_NEAR(caputo_derivative(cap, sq, kCantor, x), 0.60631147029863505, 1e-9);
}

TEST(Operators, DerivativeOfConstantDiffersBetweenRLAndCaputo) {
  const auto one = power_of_s(0.0);
  const double x = cantor_quantile(kCantor, 0.5);
  const OperatorSpec rl{OperatorKind::RLDerivative, Side::Left, 0.0, 0.5};
  const OperatorSpec cap{OperatorKind::Caputo, Side::Left, 0.0, 0.5};
  EXPECT_NEAR(rl_derivative(rl, one, kCantor, x), std::pow(0.5, -0.5) / std::tgamma(0.5), 1e-9);
  EXPECT_NEAR(caputo_derivative(cap, one, kCantor, x), 0.0, 1e-12);
}

TEST(Operators, RightSidedPowerRule) {
  // right integral of (S(b) - S)^eta
  const double b = 1.0;
  const auto f = FractalFn::of_staircase([](double u) { return (1.0 - u) * (1.0 - u); });
  const OperatorSpec integ{OperatorKind::RLIntegral, Side::Right, b, 0.5};
  const OperatorSpec der{OperatorKind::RLDerivative, Side::Right, b, 0.5};
  const double x = cantor_quantile(kCantor, 0.3);
  const double d = 0.7;
  EXPECT_NEAR(rl_integral(integ, f, kCantor, x), std::tgamma(3.0) / std::tgamma(3.5) * std::pow(d, 2.5),
              1e-10);
  EXPECT_NEAR(rl_derivative(der, f, kCantor, x), 1.5045055561273502 * std::pow(d, 1.5), 1e-8);
}

TEST(Operators, SecondOrderDerivative) {
  // D^{4/3} S^3 = Gamma(4)/Gamma(8/3) S^{5/3}
  const OperatorSpec der{OperatorKind::RLDerivative, Side::Left, 0.0, 4.0 / 3.0};
  const OperatorSpec cap{OperatorKind::Caputo, Side::Left, 0.0, 4.0 / 3.0};
  const auto cube = power_of_s(3.0);
  const double x = cantor_quantile(kCantor, 0.8);
  const double exact = std::tgamma(4.0) / std::tgamma(8.0 / 3.0) * std::pow(0.8, 5.0 / 3.0);
  EXPECT_NEAR(rl_derivative(der, cube, kCantor, x), exact, 1e-6);
  EXPECT_NEAR(caputo_derivative(cap, cube, kCantor, x), exact, 1e-5);
}

TEST(Operators, WrongSideOfTerminalThrows) {
  const OperatorSpec left{OperatorKind::RLIntegral, Side::Left, 0.5, 0.5};
  EXPECT_THROW(rl_integral(left, power_of_s(1.0), kCantor, 0.2), std::domain_error);
  const OperatorSpec right{OperatorKind::RLDerivative, Side::Right, 0.5, 0.5};
  EXPECT_THROW(rl_derivative(right, power_of_s(1.0), kCantor, 0.9), std::domain_error);
}

TEST(Operators, AtTheTerminal) {
  const OperatorSpec integ{OperatorKind::RLIntegral, Side::Left, 0.0, 0.5};
  EXPECT_EQ(rl_integral(integ, power_of_s(1.0), kCantor, 0.0), 0.0);
}

TEST(Operators, ProductTrapezoidRuleAgrees) {
  OperatorOptions opt;
  opt.rule = KernelRule::ProductTrapezoid;
  const OperatorSpec integ{OperatorKind::RLIntegral, Side::Left, 0.0, 0.5};
  const double x = cantor_quantile(kCantor, 0.9);
  const double exact = power_rule_integral(0.5, 1.0, kCantor, 0.0, x);
  EXPECT_NEAR(rl_integral(integ, power_of_s(1.0), kCantor, x, opt), exact, 1e-4);
}

TEST(Operators, DimensionShiftedKernel) {
  // kernel exponent beta - alpha: I integrates |U - v|^{beta - alpha}
  OperatorSpec s{OperatorKind::RLIntegral, Side::Left, 0.0, 0.5, KernelConvention::DimensionShifted};
  const auto one = power_of_s(0.0);
  const double e = 0.5 - kCantor.alpha();
  const double expect = std::pow(0.5, e + 1.0) / (e + 1.0) / std::tgamma(0.5);
  EXPECT_NEAR(rl_integral(s, one, kCantor, cantor_quantile(kCantor, 0.5)), expect, 1e-12);
}

TEST(Operators, PlateauOnGaps) {
  const OperatorSpec der{OperatorKind::RLDerivative, Side::Left, 0.0, 0.5};
  const auto sq = power_of_s(2.0);
  EXPECT_EQ(rl_derivative(der, sq, kCantor, 0.4), rl_derivative(der, sq, kCantor, 0.6));
}

TEST(PowerRules, PolesGiveZero) {
  // D^{1/2} of S^{-1/2}: 1/Gamma(0) = 0
  EXPECT_EQ(power_rule_derivative(0.5, -0.5, kCantor, 0.0, 0.5), 0.0);
}

// Property: operators reproduce the power rules on random (eta, beta, x).
TEST(OperatorsProperty, PowerRules) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> eta_d(0.0, 3.0);
  std::uniform_real_distribution<double> beta_d(0.1, 0.9);
  std::uniform_real_distribution<double> u_d(0.2, 1.5);
  for (int i = 0; i < 60; ++i) {
    const double eta = eta_d(rng);
    const double beta = beta_d(rng);
    const double x = cantor_quantile(kCantor, u_d(rng));
    const auto f = power_of_s(eta);
    const OperatorSpec integ{OperatorKind::RLIntegral, Side::Left, 0.0, beta};
    const OperatorSpec der{OperatorKind::RLDerivative, Side::Left, 0.0, beta};
    const double ci = power_rule_integral(beta, eta, kCantor, 0.0, x);
    const double cd = power_rule_derivative(beta, eta, kCantor, 0.0, x);
    EXPECT_NEAR(rl_integral(integ, f, kCantor, x), ci, 1e-9 * std::max(1.0, std::fabs(ci)));
    EXPECT_NEAR(rl_derivative(der, f, kCantor, x), cd, 1e-6 * std::max(1.0, std::fabs(cd)));
  }
}

// Property: semigroup I^a I^b = I^{a+b} on f = S.
TEST(OperatorsProperty, IntegralSemigroup) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> ord(0.2, 0.8);
  for (int i = 0; i < 10; ++i) {
    const double a = ord(rng);
    const double b = ord(rng);
    const auto inner = [b](double v) { return rl_integral_u([](double w) { return w; }, b, Side::Left, 0.0, v); };
    const double lhs = rl_integral_u(inner, a, Side::Left, 0.0, 0.8);
    const double rhs = std::tgamma(2.0) / std::tgamma(2.0 + a + b) * std::pow(0.8, 1.0 + a + b);
    EXPECT_NEAR(lhs, rhs, 1e-10);
  }
}

TEST(Composition, AllFourIdentities) {
  const auto sq = power_of_s(2.0);
  std::vector<double> grid;
  for (int i = 0; i < 16; ++i) grid.push_back(cantor_quantile(kCantor, (i + 0.5) / 16.0));
  for (auto k : {CompositionKind::RL_Left, CompositionKind::RL_Right, CompositionKind::Caputo_Left,
                 CompositionKind::Caputo_Right}) {
    EXPECT_LT(composition_residual(k, sq, 0.5, kCantor, 0.0, 1.0, grid), 5e-3);
  }
}

// Classical oracle: Grunwald-Letnikov against the identity-map operators.
TEST(Classical, GrunwaldLetnikovAgrees) {
  const auto id = StaircaseFn::identity();
  const auto sq = FractalFn::of_x([](double x) { return x * x; });
  const OperatorSpec der{OperatorKind::RLDerivative, Side::Left, 0.0, 0.5};
  for (double x : {0.1, 0.4, 1.0}) {
    const double gl = classical::left_gl([](double v) { return v * v; }, 0.5, 0.0, x);
    EXPECT_NEAR(rl_derivative(der, sq, id, x), gl, 1e-6);
    EXPECT_NEAR(gl, 1.5045055561273502 * std::pow(x, 1.5), 1e-6);
  }
  // right-sided Caputo of 3v carries the (-1)^n sign of the right derivative
  const double gl = classical::right_caputo_gl([](double v) { return 3.0 * v; }, 0.5, 1.0, 0.2, 3.0);
  EXPECT_NEAR(gl, -3.0 * std::pow(0.8, 0.5) / std::tgamma(1.5), 1e-6);
  EXPECT_THROW(classical::left_gl([](double v) { return v; }, 0.5, 1.0, 0.5), std::domain_error);
}
