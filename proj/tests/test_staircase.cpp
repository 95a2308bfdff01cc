#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fractal/staircase.hpp"

using namespace fractal;

namespace {

const double kExact = std::ldexp(1.0, -50);

}  // namespace

TEST(Staircase, ValuesAtExactRationals) {
  const auto sf = StaircaseFn::cantor();
  EXPECT_EQ(cantor_eval(sf, make_rational(0, 1)), 0.0);
  EXPECT_NEAR(cantor_eval(sf, make_rational(1, 4)), 1.0 / 3.0, kExact);
  EXPECT_EQ(cantor_eval(sf, make_rational(1, 3)), 0.5);
  EXPECT_EQ(cantor_eval(sf, make_rational(1, 2)), 0.5);
  EXPECT_EQ(cantor_eval(sf, make_rational(2, 3)), 0.5);
  EXPECT_EQ(cantor_eval(sf, make_rational(1, 1)), 1.0);
  // hand-expanded: 1/10 = 0.(0022)_3, 1/13 = 0.(002)_3, 3/4 = 0.(20)_3
  EXPECT_NEAR(cantor_eval(sf, make_rational(1, 10)), 0.2, kExact);
  EXPECT_NEAR(cantor_eval(sf, make_rational(1, 13)), 1.0 / 7.0, kExact);
  EXPECT_NEAR(cantor_eval(sf, make_rational(3, 4)), 2.0 / 3.0, kExact);
  EXPECT_EQ(cantor_eval(sf, make_rational(1, 5)), 0.25);
}

TEST(Staircase, DoubleArgumentsAreExpandedExactly) {
  const auto sf = StaircaseFn::cantor();
  EXPECT_NEAR(cantor_eval(sf, 0.25), 1.0 / 3.0, kExact);
  EXPECT_EQ(cantor_eval(sf, 0.5), 0.5);
  EXPECT_EQ(cantor_eval(sf, 0.0), 0.0);
  EXPECT_EQ(cantor_eval(sf, 1.0), 1.0);
  // the double nearest 1/3 lies just below it: the Hoelder modulus shows
  EXPECT_LT(cantor_eval(sf, 1.0 / 3.0), 0.5);
  EXPECT_GT(cantor_eval(sf, 1.0 / 3.0), 0.5 - 1e-9);
}

TEST(Staircase, TilingAndOddExtension) {
  const auto sf = StaircaseFn::cantor();
  EXPECT_NEAR(cantor_eval(sf, 2.25), 2.0 + 1.0 / 3.0, 4 * kExact);
  EXPECT_NEAR(cantor_eval(sf, -0.25), -1.0 / 3.0, kExact);
  EXPECT_EQ(cantor_eval(sf, make_rational(4, 3)), 1.5);
  EXPECT_EQ(cantor_eval(sf, 7.0), 7.0);
}

TEST(Staircase, UnitIntervalRuleRejectsOutside) {
  const auto sf = StaircaseFn::cantor(53, ExtensionRule::UnitInterval);
  EXPECT_THROW(cantor_eval(sf, 1.5), std::domain_error);
  EXPECT_THROW(cantor_eval(sf, -0.1), std::domain_error);
  EXPECT_THROW(cantor_quantile(sf, 2.0), std::domain_error);
  EXPECT_EQ(cantor_eval(sf, 1.0), 1.0);
}

TEST(Staircase, InvalidInputs) {
  EXPECT_THROW(StaircaseFn::cantor(0), std::invalid_argument);
  EXPECT_THROW(StaircaseFn::cantor(65), std::invalid_argument);
  const auto sf = StaircaseFn::cantor();
  EXPECT_THROW(cantor_eval(sf, std::nan("")), std::domain_error);
  EXPECT_THROW(make_rational(1, 0), std::invalid_argument);
}

TEST(Staircase, AlphaIsLog2OverLog3) {
  EXPECT_NEAR(StaircaseFn::cantor().alpha(), 0.63092975357145743, 1e-16);
  EXPECT_EQ(StaircaseFn::identity().alpha(), 1.0);
}

TEST(Staircase, Membership) {
  const auto sf = StaircaseFn::cantor();
  EXPECT_TRUE(cantor_membership(sf, 0.0));
  EXPECT_TRUE(cantor_membership(sf, 0.25));
  EXPECT_TRUE(cantor_membership(sf, make_rational(1, 3)));
  EXPECT_TRUE(cantor_membership(sf, make_rational(2, 3)));
  EXPECT_FALSE(cantor_membership(sf, 0.5));
  EXPECT_FALSE(cantor_membership(sf, make_rational(1, 5)));
  EXPECT_TRUE(cantor_membership(StaircaseFn::identity(), 0.5));
  // computed Cantor points survive the rounding of the quantile
  for (double u : {0.1, 0.3, 0.7, 0.9}) EXPECT_TRUE(cantor_membership(sf, cantor_quantile(sf, u)));
}

TEST(Staircase, Quantile) {
  const auto sf = StaircaseFn::cantor();
  EXPECT_NEAR(cantor_quantile(sf, 0.5), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(cantor_quantile(sf, 1.0 / 3.0), 0.25, 1e-15);
  EXPECT_EQ(cantor_quantile(sf, 1.0), 1.0);
  EXPECT_NEAR(cantor_quantile(sf, 2.5), 2.0 + 2.0 / 3.0, 1e-15);
  EXPECT_EQ(cantor_quantile(StaircaseFn::identity(), 0.3), 0.3);
}

TEST(Staircase, PrefractalIntervals) {
  EXPECT_EQ(prefractal_intervals(0).size(), 1u);
  const auto level2 = prefractal_intervals(2);
  ASSERT_EQ(level2.size(), 4u);
  EXPECT_NEAR(level2[1].first, 2.0 / 9.0, 1e-16);
  EXPECT_NEAR(level2[1].second, 1.0 / 3.0, 1e-16);
  EXPECT_NEAR(level2[3].second, 1.0, 1e-16);
  EXPECT_THROW(prefractal_intervals(21), std::invalid_argument);
}

// Property: S(x) + S(1 - x) = 1 and S(x/3) = S(x)/2 on exact rationals.
TEST(StaircaseProperty, SymmetryAndSelfSimilarity) {
  const auto sf = StaircaseFn::cantor();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> two(0, 40);
  std::uniform_int_distribution<int> three(0, 30);
  for (int i = 0; i < 1000; ++i) {
    const u128 den = (u128{1} << two(rng)) * detail::pow3(three(rng));
    const u128 num = ((static_cast<u128>(rng()) << 64) | rng()) % (den + 1);
    const double s = cantor_eval(sf, ExactRational{num, den});
    EXPECT_NEAR(s + cantor_eval(sf, ExactRational{den - num, den}), 1.0, kExact);
    EXPECT_NEAR(cantor_eval(sf, ExactRational{num, 3 * den}), 0.5 * s, kExact);
  }
}

// Property: monotone on random pairs.
TEST(StaircaseProperty, Monotone) {
  const auto sf = StaircaseFn::cantor();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    double a = unit(rng);
    double b = unit(rng);
    if (a > b) std::swap(a, b);
    EXPECT_LE(cantor_eval(sf, a), cantor_eval(sf, b));
  }
}

// Property: S(quantile(u)) = u exactly for dyadic u of up to 50 bits.
TEST(StaircaseProperty, QuantileRoundTrip) {
  const auto sf = StaircaseFn::cantor();
  std::mt19937_64 rng(13);
  for (int i = 0; i < 2000; ++i) {
    const double u = std::ldexp(static_cast<double>(rng() >> 14), -50);
    EXPECT_EQ(cantor_eval(sf, cantor_quantile_exact(sf, u)), u);
    EXPECT_NEAR(cantor_eval(sf, cantor_quantile(sf, u)), u, 1e-9);
  }
}

// Property: the gap (1/3, 2/3) is a plateau at 1/2, tiles included.
TEST(StaircaseProperty, GapPlateau) {
  const auto sf = StaircaseFn::cantor();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> gap(0.34, 0.66);
  for (int i = 0; i < 500; ++i) {
    const double x = gap(rng);
    EXPECT_EQ(cantor_eval(sf, x), 0.5);
    EXPECT_EQ(cantor_eval(sf, x + 3.0), 3.5);
  }
}

TEST(Staircase, DepthTruncation) {
  const auto coarse = StaircaseFn::cantor(4);
  // 4 ternary digits of 1/4 = 0.0202..: S = 0.0101 binary
  EXPECT_EQ(cantor_eval(coarse, 0.25), 0.3125);
}
