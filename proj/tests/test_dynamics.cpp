#include <gtest/gtest.h>

#include <cmath>

#include "hslope/dynamics.hpp"
#include "hslope/errors.hpp"

using namespace hslope;

namespace {

UHPoint pt(double re, double im) { return UHPoint::make(Real(re), Real(im)); }

}  // namespace

TEST(Dynamics, DeltaOrbitMatchesRationalRecursion) {
  PrecisionScope scope(256);
  OrbitTrace t = iterate_orbit(ParabolicMap::delta_at_zero(), pt(0, 1), 12, 256);
  Rational y(1);
  for (std::size_t n = 0; n <= 12; ++n) {
    const Checkpoint& c = t.checkpoints[n];
    ASSERT_EQ(c.n, n);
    EXPECT_TRUE(c.z.re().is_zero());
    Real err = abs(c.z.im() - to_real(y)) / to_real(y);
    EXPECT_LT(err, Real::parse("1e-74")) << "n=" << n;
    y = y + 1 / y;
  }
}

TEST(Dynamics, TranslationOrbit) {
  OrbitTrace t = iterate_orbit(ParabolicMap::translation(Real(1)), pt(0, 1), 200);
  ASSERT_EQ(t.iterations(), 200u);
  EXPECT_EQ(t.x.back(), 200.0);
  EXPECT_EQ(t.y.back(), 1.0);
  for (double r : t.rho_step) EXPECT_NEAR(r, 1 / std::sqrt(5.0), 1e-15);
  PommerenkeReport p = pommerenke_b(t);
  EXPECT_EQ(p.b, 1.0);
  EXPECT_TRUE(p.converged);
  EXPECT_EQ(p.max_y_ratio_dev, 0.0);
}

TEST(Dynamics, StepRhoNeverIncreases) {
  for (const auto& f : {ParabolicMap::delta_at_zero(), ParabolicMap::alpha_right(Real(0.5)),
                        ParabolicMap::log_example()}) {
    OrbitTrace t = iterate_orbit(f, pt(1, 2), 2000);
    EXPECT_LE(t.max_rho_increase, 0.0) << f.label();
  }
}

TEST(Dynamics, CheckpointLayout) {
  OrbitOptions opt;
  opt.full_storage_limit = 10;
  opt.checkpoint_ratio = 1.5;
  OrbitTrace t = iterate_orbit(ParabolicMap::delta_at_zero(), pt(0, 1), 100, 128, opt);
  ASSERT_GE(t.checkpoints.size(), 12u);
  for (std::size_t n = 0; n <= 10; ++n) EXPECT_EQ(t.checkpoints[n].n, n);
  for (std::size_t i = 1; i < t.checkpoints.size(); ++i) {
    EXPECT_LT(t.checkpoints[i - 1].n, t.checkpoints[i].n);
  }
  EXPECT_EQ(t.final_checkpoint().n, 100u);
  EXPECT_FALSE(t.final_checkpoint().step.has_value());
  EXPECT_TRUE(t.checkpoints.front().step.has_value());
  EXPECT_EQ(t.precision_bits, 128);
  EXPECT_EQ(t.x.size(), 101u);
  EXPECT_EQ(t.rho_step.size(), 100u);
}

TEST(Dynamics, OrbitIsReproducible) {
  auto f = ParabolicMap::alpha_left(Real(0.25));
  OrbitTrace a = iterate_orbit(f, pt(1, 2), 500);
  OrbitTrace b = iterate_orbit(f, pt(1, 2), 500);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
  EXPECT_EQ(a.final_checkpoint().z, b.final_checkpoint().z);
}

TEST(Dynamics, PrecisionExhaustion) {
  PrecisionScope scope(64);
  auto f = ParabolicMap::make(Real(0), FiniteMeasure::atoms_only({{Real(0), Real::parse("1e-30")}}),
                              EvalStrategy::herglotz);
  EXPECT_THROW(iterate_orbit(f, pt(0, 1), 10, 64), PrecisionError);
  EXPECT_NO_THROW(iterate_orbit(f, pt(0, 1), 10, 256));
}

TEST(Dynamics, Contracts) {
  OrbitTrace t = iterate_orbit(ParabolicMap::delta_at_zero(), pt(0, 1), 50);
  EXPECT_THROW(pommerenke_b(t), ContractError);
  EXPECT_THROW(classify_step(ParabolicMap::delta_at_zero(), pt(0, 1), 10), ContractError);
  OrbitOptions bad;
  bad.checkpoint_ratio = 1.0;
  EXPECT_THROW(iterate_orbit(ParabolicMap::delta_at_zero(), pt(0, 1), 10, 64, bad), ContractError);
}

TEST(Dynamics, ClassifiesTranslationPositive) {
  StepClassification c = classify_step(ParabolicMap::translation(Real(1)), pt(0, 1), 1000);
  EXPECT_EQ(c.label, StepLabel::positive);
  EXPECT_NEAR(c.rho_tail, 1 / std::sqrt(5.0), 1e-12);
  EXPECT_EQ(c.b, 1.0);
}

TEST(Dynamics, ClassifiesZeroStepMaps) {
  for (const auto& f : {ParabolicMap::delta_at_zero(), ParabolicMap::log_example(),
                        ParabolicMap::alpha_right(Real(0.5)), ParabolicMap::alpha_left(Real(0.75))}) {
    StepClassification c = classify_step(f, pt(0, 1), 3000);
    EXPECT_EQ(c.label, StepLabel::zero) << f.label();
    EXPECT_LT(std::abs(c.b), 1e-3) << f.label();
  }
}

TEST(Dynamics, ClassifiesPositiveAtomMap) {
  auto f = ParabolicMap::make(Real(2), FiniteMeasure::atoms_only({{Real(1), Real(1)}}), EvalStrategy::herglotz);
  StepClassification c = classify_step(f, pt(0, 1), 3000);
  EXPECT_EQ(c.label, StepLabel::positive);
  EXPECT_GT(c.b, 1e-2);
}
