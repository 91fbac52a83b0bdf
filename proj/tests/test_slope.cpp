#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hslope/errors.hpp"
#include "hslope/slope.hpp"

using namespace hslope;

namespace {

UHPoint pt(double re, double im) { return UHPoint::make(Real(re), Real(im)); }

}  // namespace

TEST(Slope, ConstantSequence) {
  std::vector<double> args(5001, 1.25);
  SlopeReport r = slope_report(args);
  EXPECT_EQ(r.lo, 1.25);
  EXPECT_EQ(r.hi, 1.25);
  EXPECT_EQ(r.width(), 0.0);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 5000u);
}

TEST(Slope, DecayingSequenceBracketsLimit) {
  std::vector<double> args;
  for (int n = 0; n <= 10000; ++n) args.push_back(0.5 + 1.0 / (n + 1));
  SlopeReport r = slope_report(args);
  EXPECT_GE(r.tail_start, 99u);
  EXPECT_LE(r.tail_start, 101u);
  EXPECT_GE(r.lo, 0.5);
  EXPECT_NEAR(r.lo, 0.5 + 1.0 / 10001, 1e-15);
  EXPECT_NEAR(r.hi, 0.5 + 1.0 / (r.tail_start + 1), 1e-15);
  ASSERT_FALSE(r.windows.empty());
  for (const auto& w : r.windows) {
    EXPECT_LE(w.lo, w.hi);
    EXPECT_LE(w.last, r.iterations);
  }
  EXPECT_NEAR(r.midpoint(), (r.lo + r.hi) / 2, 0.0);
}

TEST(Slope, OscillationIsNotConverged) {
  std::vector<double> args;
  for (int n = 0; n <= 10000; ++n) args.push_back(1.0 + 0.5 * std::sin(std::log(n + 1.0) * 3));
  SlopeReport r = slope_report(args);
  EXPECT_GT(r.width(), 0.5);
}

TEST(Slope, Contracts) {
  std::vector<double> few(10, 1.0);
  EXPECT_THROW(slope_report(few), ContractError);
  std::vector<double> many(2000, 1.0);
  SlopePolicy bad;
  bad.tail_fraction = 0.0;
  EXPECT_THROW(slope_report(many, bad), ContractError);
}

TEST(Slope, AlphaHalfConvergesToThirdOfPi) {
  OrbitTrace t = iterate_orbit(ParabolicMap::alpha_right(Real(0.5)), pt(0, 1), 20000);
  SlopeReport r = slope_report(t);
  EXPECT_NEAR(r.midpoint(), std::numbers::pi / 3, 0.01);
  EXPECT_LT(r.width(), 0.02);
}

TEST(Slope, IndependenceOnZeroStepMap) {
  IndependenceReport r =
      check_initial_point_independence(ParabolicMap::delta_at_zero(), {pt(0, 1), pt(1, 2)}, 5000);
  EXPECT_EQ(r.classification.label, StepLabel::zero);
  EXPECT_TRUE(r.passed());
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_LE(r.pairs[0].rho_final, r.pairs[0].rho_initial);
  EXPECT_EQ(r.pairs[0].rho_increases, 0u);
  ASSERT_EQ(r.slopes.size(), 2u);
  EXPECT_NEAR(r.slopes[0].midpoint(), std::numbers::pi / 2, 0.05);
}

TEST(Slope, IndependenceRejectsPositiveStep) {
  EXPECT_THROW(check_initial_point_independence(ParabolicMap::translation(Real(1)), {pt(0, 1), pt(1, 2)}, 2000),
               ContractError);
  EXPECT_THROW(check_initial_point_independence(ParabolicMap::delta_at_zero(), {pt(0, 1)}, 2000), ContractError);
}

TEST(Slope, SingletonForPositiveStep) {
  SingletonReport r = check_positive_step_singleton(ParabolicMap::translation(Real(1)), {pt(0, 1), pt(-3, 5)}, 20000);
  EXPECT_TRUE(r.passed);
  for (double t : r.targets) EXPECT_EQ(t, 0.0);
  SingletonReport l = check_positive_step_singleton(ParabolicMap::translation(Real(-1)), {pt(0, 1)}, 5000);
  EXPECT_TRUE(l.passed);
  EXPECT_EQ(l.targets[0], std::numbers::pi);
  EXPECT_THROW(check_positive_step_singleton(ParabolicMap::delta_at_zero(), {pt(0, 1)}, 2000), ContractError);
}
