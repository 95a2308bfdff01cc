#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fractal/special_functions.hpp"

using namespace fractal;

TEST(Gamma, ClassicalValues) {
  EXPECT_NEAR(gamma_classical(0.5), 1.7724538509055160, 1e-15);
  EXPECT_NEAR(gamma_classical(1.5), 0.88622692545275801, 1e-15);
  EXPECT_NEAR(gamma_classical(1.0 / 3.0), 2.6789385347077476, 1e-14);
  EXPECT_THROW(gamma_classical(0.0), std::domain_error);
  EXPECT_THROW(gamma_classical(-2.0), std::domain_error);
  EXPECT_THROW(gamma_classical(NAN), std::domain_error);
}

TEST(Gamma, Reciprocal) {
  EXPECT_EQ(reciprocal_gamma(0.0), 0.0);
  EXPECT_EQ(reciprocal_gamma(-3.0), 0.0);
  EXPECT_NEAR(reciprocal_gamma(1.5), 1.1283791670955126, 1e-15);
  EXPECT_NEAR(reciprocal_gamma(0.5), 0.56418958354775628, 1e-15);
  EXPECT_GT(reciprocal_gamma(171.5), 0.0);
  EXPECT_NEAR(reciprocal_gamma(171.5) * std::exp(std::lgamma(171.5)), 1.0, 1e-12);
}

TEST(Gamma, FractalModes) {
  const auto sf = StaircaseFn::cantor();
  // S(4/3) = 3/2 up to the rounding of 4/3
  EXPECT_NEAR(gamma_fractal(4.0 / 3.0, GammaMode::StaircaseComposed, sf), 0.88622692545275801,
              1e-8);
  EXPECT_NEAR(gamma_fractal(1.5, GammaMode::RawArgument, sf), 0.88622692545275801, 1e-15);
  EXPECT_EQ(gamma_fractal(0.5, GammaMode::StaircaseComposed, sf),
            gamma_fractal(0.4, GammaMode::StaircaseComposed, sf));
  EXPECT_THROW(gamma_fractal(0.0, GammaMode::StaircaseComposed, sf), std::domain_error);
}

TEST(Gamma, IntegralDefinition) {
  const auto sf = StaircaseFn::cantor();
  const double x = 4.0;  // S(4) = 4
  const auto g = gamma_integrand(sf, x);
  const double v = f_alpha_integral(g, sf, 0.0, cantor_quantile(sf, 60.0),
                                    QuadratureRule{QuadratureKind::TanhSinh});
  EXPECT_NEAR(v, 6.0, 1e-10);
}

TEST(Beta, ClosedForm) {
  EXPECT_NEAR(beta_fractal(0.5, 1.5), 1.5707963267948966, 1e-15);
  EXPECT_NEAR(beta_fractal(2.0, 3.0), 1.0 / 12.0, 1e-16);
  EXPECT_NEAR(beta_fractal(60.0, 70.0), std::exp(std::lgamma(60.0) + std::lgamma(70.0) - std::lgamma(130.0)),
              1e-50);
  EXPECT_THROW(beta_fractal(0.0, 1.0), std::domain_error);
}

// Property: quadrature matches Gamma ratio and both orientations agree.
TEST(BetaProperty, QuadratureAgainstGamma) {
  const auto sf = StaircaseFn::cantor();
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> par(0.5, 3.0);
  for (int i = 0; i < 40; ++i) {
    const double r = par(rng);
    const double w = par(rng);
    const double exact = beta_fractal(r, w);
    EXPECT_NEAR(beta_fractal_quadrature(r, w, sf) / exact, 1.0, 1e-6);
    EXPECT_NEAR(beta_fractal_quadrature(r, w, sf, BetaOrientation::Mirrored) / exact, 1.0, 1e-6);
    EXPECT_EQ(beta_fractal(r, w), beta_fractal(w, r));
  }
}

TEST(MittagLeffler, FrozenValues) {
  EXPECT_NEAR(MittagLeffler({0.5, 0.5})(1.0), 5.5731696643100398, 1e-13);
  EXPECT_NEAR(MittagLeffler({0.5, 0.5})(-1.0), 0.13660600739194928, 1e-14);
  EXPECT_NEAR(MittagLeffler({4.0 / 3.0, 4.0 / 3.0})(-0.5), 0.82623321805363235, 1e-14);
  EXPECT_NEAR(MittagLeffler({4.0 / 3.0, 5.0 / 6.0})(-0.5), 0.49287074512154104, 1e-14);
  EXPECT_NEAR(MittagLeffler({4.0 / 3.0, 13.0 / 3.0})(-0.5), 0.10103722208428719, 1e-15);
  EXPECT_NEAR(MittagLeffler({0.7, 1.3})(2.5), 38.861656371997842, 1e-11);
  EXPECT_NEAR(MittagLeffler({0.5, 1.0})(-3.0), 0.17900115118138995, 1e-10);
  EXPECT_NEAR(MittagLeffler({2.0, 1.0})(1.0), std::cosh(1.0), 1e-10);
}

TEST(MittagLeffler, SpecialCases) {
  const MittagLeffler e11({1.0, 1.0});
  const MittagLeffler e12({1.0, 2.0});
  EXPECT_NEAR(e11(1.0), std::exp(1.0), 1e-14);
  EXPECT_NEAR(e12(2.0), std::expm1(2.0) / 2.0, 1e-14);
  EXPECT_NEAR(MittagLeffler({2.0, 2.0})(1.0), std::sinh(1.0), 1e-9);
  EXPECT_EQ(e11(0.0), 1.0);
}

TEST(MittagLeffler, ConvergenceReporting) {
  const auto r = mittag_leffler({1.0, 1.0}, 1.0);
  EXPECT_TRUE(r.converged);
  EXPECT_GE(r.terms, 17);
  const auto capped = mittag_leffler({1.0, 1.0, 1e-15, 16}, 40.0);
  EXPECT_FALSE(capped.converged);
  EXPECT_THROW(MittagLeffler({1.0, 1.0, 1e-15, 16})(40.0), std::runtime_error);
  EXPECT_THROW(MittagLeffler({1.0, 1.0})(51.0), std::domain_error);
  EXPECT_THROW(MittagLeffler({0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(MittagLeffler({1.0, 1.0, 1e-15, 8}), std::invalid_argument);
}

TEST(MittagLeffler, PoleParametersGiveZeroTerms) {
  // nu = 0: k = 0 term vanishes, E_{1,0}(z) = z e^z
  EXPECT_NEAR(MittagLeffler({1.0, 0.0})(0.5), 0.5 * std::exp(0.5), 1e-14);
}

TEST(MittagLeffler, SpecialCaseResidualsOnGrid) {
  const auto sf = StaircaseFn::cantor();
  std::vector<double> xs;
  for (double u : linspace(0.0, 3.0, 64)) xs.push_back(cantor_quantile(sf, u));
  const GridFunction grid(xs, std::vector<double>(xs.size(), 0.0));
  EXPECT_LT(ml_special_case_residuals(sf, grid).max_abs(), 1e-8);
}

TEST(MittagLeffler, LiteralFormsDeviate) {
  EXPECT_GT(std::fabs(ml_e12_literal(2.0) - std::expm1(2.0) / 2.0), 0.1);
  EXPECT_GT(ml_eta2_literal_deviation(3.0), 1.0);
  EXPECT_LT(ml_eta2_literal_deviation(1.0), 1e-9);
}

// Property: E_{eta,nu}(z) = 1/Gamma(nu) + z E_{eta,eta+nu}(z).
TEST(MittagLefflerProperty, Recurrence) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> par(0.3, 2.5);
  std::uniform_real_distribution<double> arg(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double eta = par(rng);
    const double nu = par(rng);
    const double z = arg(rng);
    const double lhs = MittagLeffler({eta, nu})(z);
    const double rhs = reciprocal_gamma(nu) + z * MittagLeffler({eta, eta + nu})(z);
    EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, std::fabs(lhs)));
  }
}
