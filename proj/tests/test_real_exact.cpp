#include <gtest/gtest.h>

#include "hslope/errors.hpp"
#include "hslope/exact.hpp"
#include "hslope/real.hpp"

using namespace hslope;

TEST(Real, ParseAndRender) {
  PrecisionScope scope(128);
  Real x = Real::parse("-1.25e-3");
  EXPECT_EQ(x.to_double(), -0.00125);
  EXPECT_EQ(Real::parse("42").to_string(10), "42");
  EXPECT_THROW(Real::parse("abc"), InputError);
  EXPECT_THROW(Real::parse("1.5x"), InputError);
  EXPECT_THROW(Real::parse(""), InputError);
}

TEST(Real, PrecisionScopeRestores) {
  const Bits before = working_precision();
  {
    PrecisionScope scope(77);
    EXPECT_EQ(working_precision(), 77);
    EXPECT_EQ(Real(1).precision(), 77);
  }
  EXPECT_EQ(working_precision(), before);
}

TEST(Real, CopyRoundsToWorkingPrecision) {
  Real third;
  {
    PrecisionScope hi(512);
    third = Real(1) / Real(3);
  }
  PrecisionScope lo(53);
  Real copy(third);
  EXPECT_EQ(copy.precision(), 53);
  EXPECT_EQ(copy.to_double(), 1.0 / 3.0);
}

TEST(Real, PiMatchesDecimalExpansion) {
  PrecisionScope scope(256);
  Real err = abs(pi() - Real::parse("3.14159265358979323846264338327950288419716939937510582097494459"));
  EXPECT_LT(err, Real::parse("1e-62"));
}

TEST(Real, DecimalDigitsFollowsDigConvention) {
  EXPECT_EQ(decimal_digits(53), 15);
  EXPECT_EQ(decimal_digits(256), 76);
}

TEST(Exact, ParsesDecimalsAndFractions) {
  EXPECT_EQ(parse_rational("-12.5e-3"), Rational(-1, 80));
  EXPECT_EQ(parse_rational("3/9"), Rational(1, 3));
  EXPECT_EQ(parse_rational("1e6"), Rational(1000000));
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("0x10"), InputError);
}

TEST(Exact, StringRoundTrip) {
  for (const Rational& q : {Rational(1, 80), Rational(-7, 3), Rational(0), Rational(123456789, 1024)}) {
    EXPECT_EQ(parse_rational(to_exact_string(q)), q);
  }
  EXPECT_EQ(to_exact_string(Rational(1, 40)), "0.025");
  EXPECT_EQ(to_exact_string(Rational(1, 3)), "1/3");
  EXPECT_EQ(parse_rational("0.0125"), Rational(1, 80));
  EXPECT_EQ(parse_rational("007"), Rational(7));
  EXPECT_EQ(parse_rational("0010/08"), Rational(5, 4));
}

TEST(Exact, DyadicConversionIsExact) {
  PrecisionScope scope(64);
  Real x = Real::parse("0.1");
  Rational q = to_rational(x);
  EXPECT_NE(q, Rational(1, 10));
  EXPECT_EQ(to_real(q), x);
  EXPECT_EQ(to_rational(Real(0.75)), Rational(3, 4));
}
