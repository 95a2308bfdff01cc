#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fractal/solutions.hpp"

using namespace fractal;

namespace {

const auto kCantor = StaircaseFn::cantor();

}  // namespace

TEST(Problems, Definitions) {
  EXPECT_EQ(example_problem(2).op.terminal, 1.0);
  EXPECT_EQ(example_problem(3).lambda, 1.0);
  EXPECT_EQ(example_problem(4).lambda, example4_default_lambda);
  EXPECT_EQ(example_problem(4, 0.25).lambda, 0.25);
  EXPECT_EQ(example_problem(4).factors.size(), 2u);
  EXPECT_THROW(example_problem(0), std::invalid_argument);
  EXPECT_THROW(example_problem(5), std::invalid_argument);
  auto p = example_problem(1);
  p.factors[0].order = Ratio(3, 2);
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

// Values of the derived solutions at S(x) = 0.5 (S(x) = 1.5 for example 2).
TEST(Solutions, FrozenValues) {
  const double x = cantor_quantile(kCantor, 0.5);
  EXPECT_NEAR(example_solution(1, kCantor)(x), 2.5957691216057307, 1e-13);
  EXPECT_NEAR(example_solution(2, kCantor)(cantor_quantile(kCantor, 1.5)), -0.26596152026762179, 1e-13);
  EXPECT_NEAR(example_solution(3, kCantor)(x), 3.5721705184728749, 1e-12);
  EXPECT_NEAR(example_solution(4, kCantor)(x), 2.4129825592805179, 1e-12);
}

TEST(Solutions, ResidualsOfFirstThreeExamples) {
  for (int id : {1, 2, 3}) {
    const auto r = solve_example(id, kCantor);
    EXPECT_LT(r.max_residual, 1e-4) << "example " << id;
    EXPECT_EQ(r.solution.values.size(), 16u);
    ASSERT_EQ(r.candidates.size(), 2u);
    EXPECT_EQ(r.candidates[1].max_residual, r.max_residual);
    EXPECT_FALSE(r.derived_text.empty());
  }
}

TEST(Solutions, ReferenceFormulasCompared) {
  // example 2 in reference form is the derived solution
  EXPECT_LT(solve_example(2, kCantor).reference_discrepancy, 1e-12);
  // example 3 in reference form with E(-sqrt S) does not satisfy the equation
  const auto r3 = solve_example(3, kCantor);
  EXPECT_GT(r3.candidates[0].max_residual, 1.0);
  EXPECT_LT(r3.candidates[1].max_residual, 1e-6);
}

TEST(Solutions, Example4) {
  const auto r = solve_example(4, kCantor);
  EXPECT_LT(r.max_residual, 1e-3);
  EXPECT_TRUE(example4_structure_matches(r));
  EXPECT_EQ(r.pieces.size(), 3u);
}

TEST(Solutions, PlateauOnGaps) {
  for (int id = 1; id <= 4; ++id) EXPECT_EQ(gap_plateau_deviation(id, kCantor), 0.0);
}

TEST(Solutions, GridRespectsTerminal) {
  const auto xs = example_grid(2, kCantor, 8);
  ASSERT_EQ(xs.size(), 8u);
  for (double x : xs) {
    const double d = cantor_eval(kCantor, x) - 1.0;
    EXPECT_GE(d, 0.1 - 1e-15);
    EXPECT_LE(d, 1.0 + 1e-15);
  }
}

TEST(Degeneration, IdentityMapGivesClassicalSolutions) {
  for (int id = 1; id <= 4; ++id) {
    EXPECT_LT(alpha_one_degeneration(id), 1e-12) << "example " << id;
    EXPECT_EQ(alpha_one_degeneration(id, {}, true), 0.0) << "example " << id;
  }
}

// Property: for random lambda < 0 the example-4 closed form matches the
// classical series on the identity map.
TEST(Degeneration, RandomLambda) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> lam(-2.0, 0.0);
  for (int i = 0; i < 10; ++i) {
    EXPECT_LT(alpha_one_degeneration(4, {}, false, lam(rng)), 1e-11);
  }
}

TEST(Solutions, ClassicalSolutionRejectsBadId) {
  EXPECT_THROW(classical_solution(9, 0.5), std::invalid_argument);
}
