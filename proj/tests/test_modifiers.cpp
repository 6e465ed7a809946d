#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "mevo/modifiers.hpp"

namespace mevo {
namespace {

TEST(Modifiers, GaussianShape) {
  const ScoreModifier g = ScoreModifier::gaussian(356.0, 10.0);
  EXPECT_DOUBLE_EQ(g.apply(356.0), 1.0);
  EXPECT_DOUBLE_EQ(g.apply(346.0), std::exp(-0.5));  // one sigma out
  EXPECT_DOUBLE_EQ(g.apply(366.0), std::exp(-0.5));  // symmetric
  EXPECT_DOUBLE_EQ(g.apply(336.0), std::exp(-2.0));  // two sigma
  EXPECT_LT(g.apply(420.0), 1e-8);
}

TEST(Modifiers, MinGaussianIsOneSidedLeft) {
  const ScoreModifier m = ScoreModifier::min_gaussian(3.0, 1.0);
  EXPECT_DOUBLE_EQ(m.apply(-5.0), 1.0);
  EXPECT_DOUBLE_EQ(m.apply(0.0), 1.0);
  EXPECT_DOUBLE_EQ(m.apply(3.0), 1.0);
  EXPECT_DOUBLE_EQ(m.apply(4.0), std::exp(-0.5));
  EXPECT_DOUBLE_EQ(m.apply(5.0), std::exp(-2.0));
}

TEST(Modifiers, MaxGaussianIsOneSidedRight) {
  const ScoreModifier m = ScoreModifier::max_gaussian(90.0, 30.0);
  EXPECT_DOUBLE_EQ(m.apply(90.0), 1.0);
  EXPECT_DOUBLE_EQ(m.apply(200.0), 1.0);
  EXPECT_DOUBLE_EQ(m.apply(60.0), std::exp(-0.5));
  EXPECT_DOUBLE_EQ(m.apply(30.0), std::exp(-2.0));
}

TEST(Modifiers, ThresholdedLinearRampsThenSaturates) {
  const ScoreModifier t = ScoreModifier::thresholded_linear(0.7);
  EXPECT_DOUBLE_EQ(t.apply(0.0), 0.0);
  EXPECT_DOUBLE_EQ(t.apply(0.35), 0.5);
  EXPECT_DOUBLE_EQ(t.apply(0.7), 1.0);
  EXPECT_DOUBLE_EQ(t.apply(0.9), 1.0);
  EXPECT_DOUBLE_EQ(t.apply(-0.1), 0.0);  // clamped below
}

TEST(Modifiers, ThresholdedLinearDegenerateThreshold) {
  // A non-positive threshold degenerates to a step function.
  const ScoreModifier t0 = ScoreModifier::thresholded_linear(0.0);
  EXPECT_DOUBLE_EQ(t0.apply(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(t0.apply(0.0), 1.0);
  EXPECT_DOUBLE_EQ(t0.apply(0.5), 1.0);
}

TEST(Modifiers, IdentityClamps) {
  const ScoreModifier id = ScoreModifier::identity();
  EXPECT_DOUBLE_EQ(id.apply(0.25), 0.25);
  EXPECT_DOUBLE_EQ(id.apply(-0.5), 0.0);
  EXPECT_DOUBLE_EQ(id.apply(1.5), 1.0);
}

TEST(Modifiers, AllOutputsInUnitInterval) {
  const ScoreModifier mods[] = {
      ScoreModifier::gaussian(5.0, 2.0), ScoreModifier::min_gaussian(1.0, 0.5),
      ScoreModifier::max_gaussian(-2.0, 3.0),
      ScoreModifier::thresholded_linear(0.3), ScoreModifier::identity()};
  for (const ScoreModifier& m : mods) {
    for (double x = -50.0; x <= 50.0; x += 0.7) {
      const double v = m.apply(x);
      EXPECT_GE(v, 0.0) << m.describe() << " at " << x;
      EXPECT_LE(v, 1.0) << m.describe() << " at " << x;
    }
  }
}

TEST(Modifiers, ParseDispatchesByName) {
  EXPECT_DOUBLE_EQ(ScoreModifier::parse("gaussian", {2.0, 0.5}).apply(2.0), 1.0);
  EXPECT_DOUBLE_EQ(ScoreModifier::parse("min_gaussian", {3.0, 1.0}).apply(1.0),
                   1.0);
  EXPECT_DOUBLE_EQ(ScoreModifier::parse("max_gaussian", {3.0, 1.0}).apply(9.0),
                   1.0);
  EXPECT_DOUBLE_EQ(ScoreModifier::parse("thresholded_linear", {0.5}).apply(0.25),
                   0.5);
  EXPECT_DOUBLE_EQ(ScoreModifier::parse("identity", {}).apply(0.7), 0.7);
}

TEST(Modifiers, ParseRejectsBadSpecs) {
  EXPECT_THROW(ScoreModifier::parse("gaussian", {1.0}), std::invalid_argument);
  EXPECT_THROW(ScoreModifier::parse("gaussian", {1.0, 2.0, 3.0}),
               std::invalid_argument);
  EXPECT_THROW(ScoreModifier::parse("min_gaussian", {}), std::invalid_argument);
  EXPECT_THROW(ScoreModifier::parse("thresholded_linear", {0.5, 0.6}),
               std::invalid_argument);
  EXPECT_THROW(ScoreModifier::parse("identity", {1.0}), std::invalid_argument);
  EXPECT_THROW(ScoreModifier::parse("sigmoid", {1.0, 2.0}),
               std::invalid_argument);
}

TEST(Modifiers, DescribeNamesKindAndParameters) {
  EXPECT_EQ(ScoreModifier::gaussian(356.0, 10.0).describe(),
            "gaussian(356,10)");
  EXPECT_EQ(ScoreModifier::thresholded_linear(0.7).describe(),
            "thresholded_linear(0.7)");
  EXPECT_EQ(ScoreModifier::identity().describe(), "identity");
}

}  // namespace
}  // namespace mevo
