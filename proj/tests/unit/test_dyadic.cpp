#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "steinhaus/certified.hpp"
#include "steinhaus/dyadic.hpp"
#include "steinhaus/errors.hpp"

using namespace steinhaus;

TEST(Dyadic, NormalFormAndArithmetic) {
  const Dyadic a = Dyadic::parse("3/8");
  EXPECT_EQ(a.mantissa(), 3);
  EXPECT_EQ(a.exponent(), -3);
  EXPECT_EQ(Dyadic(12), Dyadic(mpz_class(3), 2));
  EXPECT_EQ(Dyadic::parse("0.375"), a);
  EXPECT_EQ(Dyadic::parse("3/2^3"), a);
  EXPECT_EQ(a + a, Dyadic::parse("3/4"));
  EXPECT_EQ(a * a, Dyadic::parse("9/64"));
  EXPECT_EQ(a - Dyadic(1), Dyadic::parse("-5/8"));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ((a - a).exponent(), 0);
  EXPECT_EQ(a.shifted(3), Dyadic(3));
}

TEST(Dyadic, FloorCeilAndOrder) {
  EXPECT_EQ(Dyadic::parse("-5/4").floor(), -2);
  EXPECT_EQ(Dyadic::parse("-5/4").ceil(), -1);
  EXPECT_EQ(Dyadic::parse("7/2").floor(), 3);
  EXPECT_EQ(Dyadic(4).ceil(), 4);
  EXPECT_LT(Dyadic::parse("1/4"), Dyadic::parse("5/16"));
  EXPECT_GT(Dyadic(-1), Dyadic(-2));
}

TEST(Dyadic, RejectsNonDyadic) {
  EXPECT_THROW(Dyadic::parse("1/6"), ParameterError);
  EXPECT_THROW(Dyadic::parse("0.1"), ParameterError);
  EXPECT_THROW(Dyadic::parse("abc"), ParameterError);
}

TEST(Dyadic, DoubleConversionIsExact) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    EXPECT_EQ(Dyadic::from_double(x).to_double(), x);
    const Dyadic f = Dyadic::floor_of(x, 10);
    EXPECT_LE(f.to_double(), x);
    EXPECT_GT(f.to_double() + std::ldexp(1.0, -10), x);
  }
}

TEST(GridSet, RefineRestrictVolume) {
  const GridSet e(2, 1, {Cell{0, 0, 0}, Cell{1, 1, 0}});
  EXPECT_EQ(grid_volume(e), Dyadic::parse("1/2"));
  const GridSet r = e.refined(3);
  EXPECT_EQ(r.size(), 32u);
  EXPECT_EQ(grid_volume(r), grid_volume(e));
  const DyadicCube q{2, 1, Cell{1, 1, 0}};
  const GridSet piece = restrict(e, q);
  EXPECT_EQ(piece.size(), 1u);
  EXPECT_TRUE(e.contains_point({Dyadic::parse("3/4"), Dyadic::parse("3/4")}));
  EXPECT_FALSE(e.contains_point({Dyadic::parse("3/4"), Dyadic::parse("1/4")}));
}

TEST(GridSet, CubeTree) {
  const DyadicCube q{2, 1, Cell{1, 0, 0}};
  const auto ch = q.children();
  ASSERT_EQ(ch.size(), 4u);
  for (const auto& c : ch) {
    EXPECT_TRUE(q.contains(c));
    EXPECT_EQ(c.parent(), q);
  }
  EXPECT_FALSE(ch[0].contains(q));
}

TEST(Certified, IntervalEnclosesPi) {
  const MpInterval p = MpInterval::pi(200);
  EXPECT_LE(p.lo_d(), M_PI);
  EXPECT_GE(p.hi_d(), M_PI);
  const MpInterval two(Dyadic(2), 100);
  const MpInterval s = two.sqrt();
  EXPECT_LE(s.lo_d(), std::sqrt(2.0));
  EXPECT_GE(s.hi_d(), std::sqrt(2.0));
  EXPECT_LT(s.width(), 1e-25);
}

TEST(Certified, SqrtDifferenceSign) {
  // exact tie, decided symbolically
  EXPECT_EQ(sign_sqrt_diff(Dyadic(4), Dyadic(4), Dyadic(0)), 0);
  EXPECT_EQ(sign_sqrt_diff(Dyadic(5), Dyadic(4), Dyadic(0)), 1);
  EXPECT_EQ(sign_sqrt_diff(Dyadic(2), Dyadic(1), Dyadic::parse("1/2")), -1);  // 0.414 - 0.5
  EXPECT_EQ(sign_sqrt_diff(Dyadic(2), Dyadic(1), Dyadic::parse("13/32")), 1);  // 0.414 - 0.406
}
