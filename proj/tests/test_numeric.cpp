#include "seqspace/numeric.hpp"

#include <gtest/gtest.h>

using namespace seqspace;

TEST(Rational, ParsesDecimalFractionAndExponentForms) {
  EXPECT_EQ(parse_rational("12"), Rational(12));
  EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(parse_rational("2.5E+2"), Rational(250));
  EXPECT_THROW(parse_rational("1..2"), InvalidInput);
  EXPECT_THROW(parse_rational("abc"), InvalidInput);
  EXPECT_THROW(parse_rational("1/0"), InvalidInput);
}

TEST(Rational, FormatIsLosslessAndDecimalWhenTerminating) {
  EXPECT_EQ(format_rational(Rational(-1, 4)), "-0.25");
  EXPECT_EQ(format_rational(Rational(7)), "7");
  EXPECT_EQ(format_rational(Rational(1, 3)), "1/3");
  EXPECT_EQ(format_rational(Rational(3, 1000)), "0.003");
  for (const char* s : {"0.125", "-17/3", "123456789.000001", "5e-20"}) {
    Rational q = parse_rational(s);
    EXPECT_EQ(parse_rational(format_rational(q)), q) << s;
  }
}

TEST(Interval, EnclosesExactRationals) {
  Interval third(Rational(1, 3));
  EXPECT_TRUE(third.contains(Rational(1, 3)));
  EXPECT_FALSE(third.is_point());
  Interval half(Rational(1, 2));
  EXPECT_TRUE(half.is_point());
  Interval sum = third + third + third;
  EXPECT_TRUE(sum.contains(Rational(1)));
}

TEST(Interval, ElementaryFunctionsAreOutwardRounded) {
  Interval two(2L);
  Interval s = sqrt(two);
  EXPECT_TRUE(certainly_lt(Interval(Rational(14142135, 10000000)), s));
  EXPECT_TRUE(certainly_lt(s, Interval(Rational(14142136, 10000000))));
  Interval l = log(Interval(16L)) / log(two);
  EXPECT_TRUE(l.contains(Rational(4)));
  EXPECT_LT(l.width().hi_double(), 1e-45);
}

TEST(Interval, PrecisionScopeControlsWidth) {
  Interval wide, narrow;
  {
    PrecisionScope p(20);
    wide = log(Interval(3L));
  }
  {
    PrecisionScope p(80);
    narrow = log(Interval(3L));
  }
  EXPECT_TRUE(wide.contains(narrow));
  EXPECT_LT(narrow.width().hi_double(), 1e-75);
  EXPECT_GT(wide.width().hi_double(), 1e-25);
}

TEST(Interval, DivisionByIntervalContainingZeroThrows) {
  Interval z = Interval::hull(Interval(-1L), Interval(1L));
  EXPECT_THROW(Interval(1L) / z, PrecisionError);
}

TEST(Interval, RoundToDigitsIsDirected) {
  Interval l2 = log(Interval(2L));
  Rational down = round_to_digits(l2, 30, true);
  Rational up = round_to_digits(l2, 30, false);
  EXPECT_LT(down, up);
  EXPECT_TRUE(certainly_le(Interval(down), l2));
  EXPECT_TRUE(certainly_le(l2, Interval(up)));
}
