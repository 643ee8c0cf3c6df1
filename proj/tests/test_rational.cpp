#include <random>

#include <gtest/gtest.h>

#include "limitcert/rational.hpp"
#include "test_support.hpp"

using limitcert::BigInt;
using limitcert::ExactRational;
using limitcert::oracle::OracleRational;

TEST(ExactRational, StoresLowestTerms) {
  const ExactRational q(BigInt(6), BigInt(-8));
  EXPECT_EQ(q.numerator(), -3);
  EXPECT_EQ(q.denominator(), 4);
  EXPECT_EQ(q.to_string(), "-3/4");
  EXPECT_EQ(ExactRational(2).to_string(), "2/1");
}

TEST(ExactRational, ZeroDenominatorRejected) {
  EXPECT_THROW(ExactRational(BigInt(1), BigInt(0)), std::invalid_argument);
  EXPECT_THROW(ExactRational(1) / ExactRational(0), std::domain_error);
}

TEST(ExactRational, ParsesFractionsIntegersAndDecimalsExactly) {
  EXPECT_EQ(ExactRational::parse("83/84"), ExactRational(BigInt(83), BigInt(84)));
  EXPECT_EQ(ExactRational::parse("-12"), ExactRational(-12));
  EXPECT_EQ(ExactRational::parse("0.25"), ExactRational(BigInt(1), BigInt(4)));
  EXPECT_EQ(ExactRational::parse(".5"), ExactRational(BigInt(1), BigInt(2)));
  EXPECT_EQ(ExactRational::parse("3."), ExactRational(3));
  EXPECT_EQ(ExactRational::parse("1e-5"), ExactRational(BigInt(1), BigInt(100000)));
  EXPECT_EQ(ExactRational::parse("2.5E2"), ExactRational(250));
  EXPECT_EQ(ExactRational::parse("0.1"), ExactRational(BigInt(1), BigInt(10)));
}

TEST(ExactRational, ParseRejectsGarbage) {
  for (const char* bad : {"", "-", "1/", "/2", "1/0", "a", "1.2.3", "1/2/3", "1e", "0x10", "."}) {
    EXPECT_THROW(ExactRational::parse(bad), std::invalid_argument) << bad;
  }
}

TEST(ExactRational, FromDoubleIsExact) {
  EXPECT_EQ(ExactRational::from_double(0.375), ExactRational(BigInt(3), BigInt(8)));
  // 0.1 is not dyadic; its double is a nearby dyadic rational.
  EXPECT_NE(ExactRational::from_double(0.1), ExactRational::parse("0.1"));
  EXPECT_THROW(ExactRational::from_double(std::nan("")), std::invalid_argument);
}

TEST(ExactRational, PowAndOrdering) {
  const ExactRational half(BigInt(1), BigInt(2));
  EXPECT_EQ(half.pow(10), ExactRational(BigInt(1), BigInt(1024)));
  EXPECT_EQ(half.pow(0), ExactRational(1));
  EXPECT_LT(half, ExactRational(1));
  EXPECT_GT(-half, ExactRational(-1));
  EXPECT_EQ((-half).abs(), half);
  EXPECT_EQ(half.reciprocal(), ExactRational(2));
}

TEST(ExactRational, ArithmeticMatchesIndependentOracle) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-1000, 1000);
  std::uniform_int_distribution<long> den(1, 1000);
  for (int trial = 0; trial < 500; ++trial) {
    const long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    const ExactRational x{BigInt(a), BigInt(b)};
    const ExactRational y{BigInt(c), BigInt(d)};
    const OracleRational ox(a, b);
    const OracleRational oy(c, d);
    EXPECT_TRUE(limitcert::oracle::same_value(x + y, ox + oy));
    EXPECT_TRUE(limitcert::oracle::same_value(x - y, ox - oy));
    EXPECT_TRUE(limitcert::oracle::same_value(x * y, ox * oy));
    if (c != 0) {
      EXPECT_TRUE(limitcert::oracle::same_value(x / y, ox / oy));
    }
    EXPECT_EQ(x < y, ox < oy);
    EXPECT_EQ(ExactRational::parse(x.to_string()), x);
  }
}
