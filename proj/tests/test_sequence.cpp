#include <gtest/gtest.h>

#include <cmath>

#include "graphesa/error.hpp"
#include "graphesa/sequence.hpp"

using namespace graphesa;

TEST(Sequence, PowerValuesAndGrowth) {
  const auto s = Sequence::power(2.0, 3.0, 1.0);
  EXPECT_DOUBLE_EQ(s(0), 2.0);
  EXPECT_DOUBLE_EQ(s(2), 54.0);
  ASSERT_TRUE(s.growth());
  EXPECT_DOUBLE_EQ(s.growth()->power, 3.0);
  EXPECT_DOUBLE_EQ(s.growth()->ratio, 1.0);
  EXPECT_FALSE(s.growth()->exact);
  EXPECT_TRUE(Sequence::power(1.0, 2.0).growth()->exact);
}

TEST(Sequence, GeometricIsExact) {
  const auto s = Sequence::geometric(0.5, 2.0, 1.0);
  for (Index n = 0; n < 20; ++n) EXPECT_DOUBLE_EQ(s(n), std::ldexp(0.5, static_cast<int>(n)));
  EXPECT_TRUE(s.growth()->exact);
  EXPECT_DOUBLE_EQ(s.growth()->ratio, 2.0);
}

TEST(Sequence, TableBoundsAndDeclaredGrowth) {
  const auto s = Sequence::table({1.0, 2.0, 4.0}, Growth{1.0, 2.0, 0.0, true});
  EXPECT_DOUBLE_EQ(s(2), 4.0);
  EXPECT_EQ(s.max_index(), 2);
  EXPECT_FALSE(s.growth()->exact);
  EXPECT_THROW(s(3), Error);
  EXPECT_THROW(s(-1), Error);
  EXPECT_THROW(Sequence::table({}), Error);
}

TEST(Growth, AlgebraMatchesEvaluation) {
  const Growth a{2.0, 3.0, 1.5, false};
  const Growth b{0.5, 0.5, -2.0, false};
  for (double n : {3.0, 7.0, 20.0}) {
    EXPECT_NEAR(a.times(b).evaluate(n), a.evaluate(n) * b.evaluate(n), 1e-9 * a.evaluate(n) * b.evaluate(n));
    EXPECT_NEAR(a.over(b).evaluate(n), a.evaluate(n) / b.evaluate(n), 1e-9 * a.evaluate(n) / b.evaluate(n));
    EXPECT_NEAR(a.pow(-0.5).evaluate(n), std::pow(a.evaluate(n), -0.5), 1e-12);
  }
}

TEST(Growth, SeriesAndBoundedness) {
  EXPECT_TRUE((Growth{1.0, 1.0, -1.0, false}).series_diverges());
  EXPECT_FALSE((Growth{1.0, 1.0, -1.5, false}).series_diverges());
  EXPECT_FALSE((Growth{1.0, 0.9, 5.0, false}).series_diverges());
  EXPECT_TRUE((Growth{1.0, 1.1, -5.0, false}).series_diverges());
  EXPECT_TRUE((Growth{1.0, 1.0, 0.0, false}).bounded());
  EXPECT_FALSE((Growth{1.0, 1.0, 0.0, false}).tends_to_zero());
  EXPECT_TRUE((Growth{1.0, 0.5, 3.0, false}).tends_to_zero());
  EXPECT_EQ((Growth{1.0, 2.0, 0.0, false}).compare_order(Growth{5.0, 2.0, 1.0, false}), -1);
  EXPECT_EQ((Growth{1.0, 2.0, 1.0, false}).compare_order(Growth{5.0, 2.0, 1.0, false}), 0);
}
