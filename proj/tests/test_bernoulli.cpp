#include <gtest/gtest.h>

#include "cubeharm/bernoulli.hpp"
#include "oracles.hpp"

using namespace cubeharm;

TEST(Bernoulli, PositiveConvention) {
  EXPECT_EQ(bernoulli_paper(1), Rational(1, 6));
  EXPECT_EQ(bernoulli_paper(2), Rational(1, 30));
  EXPECT_EQ(bernoulli_paper(3), Rational(1, 42));
  EXPECT_EQ(bernoulli_paper(6), Rational(691, 2730));
  EXPECT_THROW(bernoulli_paper(0), std::domain_error);
  EXPECT_THROW(bernoulli_paper(-2), std::domain_error);
}

TEST(Bernoulli, MatchesSeriesDivisionOracle) {
  for (unsigned m = 1; m <= 10; ++m) EXPECT_EQ(bernoulli_paper(m), oracle::bernoulli_via_division(m)) << "m=" << m;
}

TEST(Bernoulli, Scaled) {
  EXPECT_EQ(b_scaled(1), Rational(1, 6));
  EXPECT_EQ(b_scaled(2), Rational(1, 90));
  EXPECT_EQ(b_scaled(3), Rational(1, 945));
  EXPECT_THROW(b_scaled(0), std::domain_error);
  for (long m = 1; m <= 20; ++m) {
    EXPECT_GT(bernoulli_paper(m).sign(), 0) << m;
    EXPECT_GT(b_scaled(m).sign(), 0) << m;
  }
}

TEST(Bernoulli, ScaledApproachesZetaRatio) {
  // b_m = ζ(2m)/π^{2m}, and ζ(2m) → 1.
  const double pi = std::acos(-1.0);
  for (long m = 6; m <= 12; ++m) {
    EXPECT_NEAR(b_scaled(m).to_double() * std::pow(pi, 2.0 * m), 1.0, 1e-3);
  }
}

TEST(Bernoulli, ReferenceSeries) {
  const RationalSeries zc = coth_series(8);
  EXPECT_EQ(zc[0], Rational(1));
  EXPECT_EQ(zc[2], Rational(1, 3));
  EXPECT_EQ(zc[4], Rational(-1, 45));
  EXPECT_TRUE(zc[3].is_zero());
  const RationalSeries th = tanh_series(8);
  EXPECT_EQ(th[1], Rational(1));
  EXPECT_EQ(th[3], Rational(-1, 3));
  EXPECT_EQ(th[5], Rational(2, 15));
}

TEST(Bernoulli, CothTimesTanhIsOne) {
  // (z coth z)·(tanh z / z) = 1.
  const std::size_t order = 16;
  const RationalSeries tanh_over_z = tanh_series(order + 1).shifted_down(1);
  const RationalSeries product = coth_series(order) * tanh_over_z;
  EXPECT_EQ(product, RationalSeries::constant(order, Rational(1)));
}

TEST(Bernoulli, CothFromExponential) {
  // z coth z = z + 2z/(e^{2z} − 1), built with series division only.
  const std::size_t order = 14;
  RationalSeries num(order);
  num[0] = Rational(2);
  RationalSeries den(order);  // (e^{2z} − 1)/z
  for (std::size_t j = 0; j <= order; ++j) den[j] = pow2(static_cast<unsigned>(j + 1)) / oracle::fact(j + 1);
  RationalSeries built = series_div(num, den, order);
  built[1] += Rational(1);
  EXPECT_EQ(built, coth_series(order));
}
