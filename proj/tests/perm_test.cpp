#include <random>

#include <gtest/gtest.h>

#include "grr/perm.hpp"
#include "oracles.hpp"

namespace grr {
namespace {

Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), Point{0});
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

TEST(Permutation, ComposeAppliesLeftFactorFirst) {
  const auto a = parse_cycles("(1,2)", 3);
  const auto b = parse_cycles("(2,3)", 3);
  // 1 -a-> 2 -b-> 3
  EXPECT_EQ((a * b)(0), 2u);
  EXPECT_EQ((a * b).to_string(), "(1,3,2)");
  EXPECT_EQ(parse_cycles("(1,2)(2,3)", 3), a * b);
}

TEST(Permutation, ParseAndPrintRoundTrip) {
  EXPECT_EQ(parse_cycles("(1,2,3)(4,5)", 6).to_string(), "(1,2,3)(4,5)");
  EXPECT_EQ(parse_cycles("(3,1,2)", 3).to_string(), "(1,2,3)");
  EXPECT_EQ(parse_cycles("", 4).to_string(), "()");
  EXPECT_EQ(parse_cycles("()", 4).to_string(), "()");
  EXPECT_EQ(parse_cycles(" ( 1 , 2 ) ", 2).to_string(), "(1,2)");
  EXPECT_EQ(Permutation(5).to_string(), "()");
}

TEST(Permutation, ParseErrors) {
  EXPECT_THROW(parse_cycles("(1,2", 3), ParseError);
  EXPECT_THROW(parse_cycles("(1,4)", 3), ParseError);
  EXPECT_THROW(parse_cycles("(0,1)", 3), ParseError);
  EXPECT_THROW(parse_cycles("(1,2,1)", 3), ParseError);
  EXPECT_THROW(parse_cycles("1,2", 3), ParseError);
  EXPECT_THROW(parse_cycles("(1;2)", 3), ParseError);
  EXPECT_THROW(Permutation(std::vector<Point>{0, 0}), PreconditionError);
}

TEST(Permutation, DegreeMismatchThrows) {
  EXPECT_THROW(compose(Permutation(3), Permutation(4)), PreconditionError);
}

TEST(Permutation, OrderIsLcmOfCycleLengths) {
  EXPECT_EQ(order_of(parse_cycles("(1,2,3)(4,5)", 5)), 6);
  EXPECT_EQ(order_of(Permutation(4)), 1);
  // 2*3*5*7*11*13 points in disjoint cycles of those lengths
  std::string s;
  std::size_t start = 1;
  for (int len : {2, 3, 5, 7, 11, 13}) {
    s += "(";
    for (int i = 0; i < len; ++i) s += (i ? "," : "") + std::to_string(start + i);
    s += ")";
    start += len;
  }
  EXPECT_EQ(order_of(parse_cycles(s, start - 1)), 30030);
}

TEST(Permutation, PowersMatchRepeatedProducts) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto g = random_perm(9, rng);
    Permutation acc(9);
    for (int e = 0; e <= 12; ++e) {
      EXPECT_EQ(power(g, e), acc);
      EXPECT_EQ(power(g, -e), acc.inverse());
      acc.then(g);
    }
    EXPECT_TRUE(power(g, order_of(g)).is_identity());
  }
}

TEST(Permutation, GroupLawsOnRandomSamples) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_perm(8, rng), b = random_perm(8, rng), c = random_perm(8, rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE((a * a.inverse()).is_identity());
    EXPECT_EQ(conjugate(a, b), b.inverse() * a * b);
    EXPECT_EQ(oracle::images(a * b), oracle::mul(oracle::images(a), oracle::images(b)));
    EXPECT_EQ(is_even(a * b), is_even(a) == is_even(b));
    EXPECT_EQ(parse_cycles(a.to_string(), 8), a);
  }
}

TEST(Permutation, ParityCountsTranspositions) {
  EXPECT_TRUE(is_even(parse_cycles("(1,2,3)", 3)));
  EXPECT_FALSE(is_even(parse_cycles("(1,2)", 3)));
  EXPECT_TRUE(is_even(parse_cycles("(1,2)(3,4)", 4)));
  EXPECT_FALSE(is_even(parse_cycles("(1,2,3,4)", 4)));
}

TEST(Permutation, FixedPointsAndFirstMoved) {
  const auto g = parse_cycles("(2,4)", 5);
  EXPECT_EQ(fixed_points(g), (std::vector<Point>{0, 2, 4}));
  EXPECT_EQ(g.first_moved(), 1u);
}

TEST(Permutation, MaxPointIn) {
  EXPECT_EQ(max_point_in("(1,12)(3,4)"), 12u);
  EXPECT_EQ(max_point_in(""), 0u);
}

}  // namespace
}  // namespace grr
