#include <gtest/gtest.h>

#include <random>

#include "manetq/rational.hpp"

namespace manetq {
namespace {

TEST(ExactRational, ParsesFractions) {
  EXPECT_EQ(ExactRational::parse("3/100"), ExactRational(3, 100));
  EXPECT_EQ(ExactRational::parse("6/200").to_string(), "3/100");
  EXPECT_EQ(ExactRational::parse("-2/4"), ExactRational(-1, 2));
  EXPECT_EQ(ExactRational::parse("+7/1"), ExactRational(7));
}

TEST(ExactRational, ParsesDecimalsWithoutBinaryRounding) {
  EXPECT_EQ(ExactRational::parse("0.03"), ExactRational(3, 100));
  EXPECT_EQ(ExactRational::parse("0.1"), ExactRational(1, 10));
  EXPECT_EQ(ExactRational::parse("1000"), ExactRational(1000));
  EXPECT_EQ(ExactRational::parse("2463."), ExactRational(2463));
  EXPECT_EQ(ExactRational::parse(".5"), ExactRational(1, 2));
  EXPECT_EQ(ExactRational::parse("1e-9"), ExactRational(mpz_class(1), mpz_class("1000000000")));
  EXPECT_EQ(ExactRational::parse("1.5E2"), ExactRational(150));
  EXPECT_EQ(ExactRational::parse("-0.25"), ExactRational(-1, 4));
}

TEST(ExactRational, RejectsMalformedInput) {
  for (const char* bad : {"", "/", "1/", "/2", "1/0", "abc", "1.2.3", "1/-2", "--1", "1e", ".", "0x10", "1 / 2"}) {
    EXPECT_THROW(ExactRational::parse(bad), ParseError) << bad;
  }
}

TEST(ExactRational, CanonicalFormAndRendering) {
  const ExactRational one(5, 5);
  EXPECT_EQ(one.to_string(), "1/1");
  EXPECT_EQ(ExactRational(0, 7).to_string(), "0/1");
  EXPECT_EQ(ExactRational(4, -6).to_string(), "-2/3");
  EXPECT_EQ(ExactRational(1, 5).to_decimal(12), "0.2");
  EXPECT_EQ(ExactRational(1, 3).to_decimal(12), "0.333333333333");
  EXPECT_THROW(ExactRational(1, 0), InvalidParameter);
}

TEST(ExactRational, PowerAndFloor) {
  EXPECT_EQ(pow(ExactRational(3, 5), 3), ExactRational(27, 125));
  EXPECT_EQ(pow(ExactRational(4, 5), -1), ExactRational(5, 4));
  EXPECT_EQ(pow(ExactRational(0), 0), ExactRational(1));
  EXPECT_EQ(ExactRational(100, 3).floor(), 33);
  EXPECT_EQ(ExactRational(-1, 3).floor(), -1);
  EXPECT_EQ(ExactRational(7, 3).ceil(), 3);
}

TEST(ExactRational, FromDoubleIsExact) {
  EXPECT_EQ(ExactRational::from_double(0.5), ExactRational(1, 2));
  EXPECT_NE(ExactRational::from_double(0.1), ExactRational(1, 10));
  EXPECT_THROW(ExactRational::from_double(std::nan("")), InvalidParameter);
}

// Property: every printed rational (and decimal input) re-parses to itself.
TEST(ExactRational, PrintParseRoundTrip) {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
  for (int i = 0; i < 2000; ++i) {
    const ExactRational x(num(gen), den(gen));
    EXPECT_EQ(ExactRational::parse(x.to_string()), x);
  }
}

TEST(ExactRational, ToDoubleRoundsToNearest) {
  EXPECT_EQ(ExactRational(9, 10).to_double(), 0.9);
  EXPECT_EQ(ExactRational(99, 100).to_double(), 0.99);
  EXPECT_EQ(ExactRational(1, 3).to_double(), 1.0 / 3.0);
  EXPECT_EQ(ExactRational(-2, 3).to_double(), -2.0 / 3.0);
  for (double x : {0.1, 0.03, 1e-300, 123456.789, -7.25})
    EXPECT_EQ(ExactRational::from_double(x).to_double(), x);
  for (long q = 1; q < 2000; q += 7)
    for (long p = 1; p < 40; ++p) EXPECT_EQ(ExactRational(p, q).to_double(), static_cast<double>(p) / static_cast<double>(q));
}

}  // namespace
}  // namespace manetq
