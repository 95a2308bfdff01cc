#include <gtest/gtest.h>

#include <cmath>

#include "fractal/quadrature.hpp"

using namespace fractal;

TEST(Quadrature, GaussLegendreIsExactForPolynomials) {
  const auto r = gauss_legendre(8);
  double sum_w = 0.0;
  double m14 = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    sum_w += r.w[i];
    m14 += r.w[i] * std::pow(r.x[i], 14);
  }
  EXPECT_NEAR(sum_w, 2.0, 4e-15);
  EXPECT_NEAR(m14, 2.0 / 15.0, 1e-15);
  EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
}

TEST(Quadrature, RulesAgreeOnSmoothIntegrand) {
  const auto f = [](double x) { return std::exp(-x) * std::cos(3 * x); };
  // int_0^2 e^-x cos 3x dx = (1 - e^-2 (cos 6 - 3 sin 6)) / 10
  const double exact = (1.0 - std::exp(-2.0) * (std::cos(6.0) - 3.0 * std::sin(6.0))) / 10.0;
  EXPECT_NEAR(integrate(f, 0.0, 2.0, {QuadratureKind::GaussLegendre}), exact, 1e-14);
  EXPECT_NEAR(integrate(f, 0.0, 2.0, {QuadratureKind::TanhSinh}), exact, 1e-13);
  EXPECT_NEAR(integrate(f, 0.0, 2.0, {QuadratureKind::Trapezoid, 4096}), exact, 1e-6);
}

TEST(Quadrature, TanhSinhHandlesEndpointSingularity) {
  const auto f = [](double x) { return 1.0 / std::sqrt(x); };
  EXPECT_NEAR(integrate(f, 0.0, 1.0, {QuadratureKind::TanhSinh}), 2.0, 1e-12);
  const auto g = [](double x) { return std::log(x); };
  EXPECT_NEAR(integrate(g, 0.0, 1.0, {QuadratureKind::TanhSinh}), -1.0, 1e-12);
}

TEST(Quadrature, EmptyAndReversedIntervals) {
  const auto f = [](double x) { return x; };
  EXPECT_EQ(integrate(f, 1.0, 1.0), 0.0);
  EXPECT_THROW(integrate(f, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(integrate(f, 0.0, HUGE_VAL), std::invalid_argument);
}

TEST(Quadrature, Deterministic) {
  const auto f = [](double x) { return std::sin(x * x); };
  EXPECT_EQ(integrate(f, 0.0, 3.0), integrate(f, 0.0, 3.0));
}
