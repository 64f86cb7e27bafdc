#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "steinhaus/constructions.hpp"
#include "steinhaus/content.hpp"

using namespace steinhaus;

namespace {

// Independent floating-point recursion: m(Q) = min(l(Q)^s, sum over children), 0 on empty Q.
double content_oracle(const GridSet& e, double s) {
  const int L = e.resolution(), d = e.dim();
  std::function<double(int, Cell)> rec = [&](int level, Cell c) -> double {
    bool any = false;
    for (const auto& x : e.cells()) {
      bool in = true;
      for (int k = 0; k < d; ++k) in = in && (x[k] >> (L - level)) == c[k];
      if (in) { any = true; break; }
    }
    if (!any) return 0.0;
    const double self = std::pow(2.0, -level * s);
    if (level == L) return self;
    double sum = 0;
    for (int m = 0; m < (1 << d); ++m) {
      Cell ch{};
      for (int k = 0; k < d; ++k) ch[k] = 2 * c[k] + ((m >> k) & 1);
      sum += rec(level + 1, ch);
    }
    return std::min(self, sum);
  };
  return rec(0, Cell{});
}

GridSet random_set(std::mt19937_64& rng, int d, int L, double p) {
  std::bernoulli_distribution b(p);
  std::vector<Cell> cells;
  const int n = 1 << L;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < (d == 3 ? n : 1); ++k)
        if (b(rng)) cells.push_back(Cell{i, j, d == 3 ? k : 0});
  if (cells.empty()) cells.push_back(Cell{});
  return GridSet(d, L, cells);
}

}  // namespace

TEST(Rational, ParseAndOrder) {
  EXPECT_EQ(Rational::parse("6/4"), Rational(3, 2));
  EXPECT_EQ(Rational::parse("2"), Rational(2, 1));
  EXPECT_LT(Rational(4, 3), Rational(3, 2));
  EXPECT_EQ(Rational(9, 6).str(), "3/2");
}

TEST(ContentValue, ExactNormalForm) {
  // 2 * 2^{-s} == 1 at s = 1
  EXPECT_EQ(ContentValue::cube(Rational(1, 1), 1, 2), ContentValue::cube(Rational(1, 1), 0));
  // at s = 1/2: 2^{-2 s} = 1/2, and 4 * 2^{-4 s} = 1
  EXPECT_EQ(ContentValue::cube(Rational(1, 2), 4, 4), ContentValue::cube(Rational(1, 2), 0));
  // 2^{-1/2} is irrational: no dyadic multiple of 2^{-s} equals 1 at s = 1/2 with an odd shift
  EXPECT_NE(compare(ContentValue::cube(Rational(1, 2), 1, 1).times(1), ContentValue::cube(Rational(1, 2), 0)), 0);
  const ContentValue a = ContentValue::cube(Rational(4, 3), 2, 3) + ContentValue::cube(Rational(4, 3), 5, 7);
  EXPECT_NEAR(a.approx(), 3 * std::pow(2.0, -8.0 / 3) + 7 * std::pow(2.0, -20.0 / 3), 1e-15);
  const MpInterval iv = a.enclose(128);
  EXPECT_LE(iv.lo_d(), a.approx());
  EXPECT_GE(iv.hi_d(), a.approx());
  EXPECT_EQ(a.scaled_up(3).approx() / a.approx(), std::pow(2.0, 4.0));
}

TEST(Content, FullCubeIsOne) {
  for (int L : {0, 2, 4})
    for (Rational s : {Rational(1, 1), Rational(3, 2), Rational(7, 4)})
      EXPECT_EQ(content(GridSet::full(2, L), s), ContentValue::cube(s, 0)) << L << " " << s.str();
}

TEST(Content, AgreesWithRecursionOracle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    const int d = i % 4 == 3 ? 3 : 2;
    const GridSet e = random_set(rng, d, d == 3 ? 3 : 4, 0.3);
    for (Rational s : {Rational(1, 1), Rational(4, 3), Rational(3, 2)}) {
      const double ref = content_oracle(e, s.value());
      EXPECT_NEAR(content(e, s).approx(), ref, 1e-12 * std::max(1.0, ref));
    }
  }
}

TEST(Content, AgreesWithExhaustiveCovers) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const GridSet e = random_set(rng, 2, 2 + i % 2, 0.4);
    for (Rational s : {Rational(1, 1), Rational(5, 3)}) EXPECT_EQ(content(e, s), brute_force_content(e, s));
  }
}

TEST(Content, BuildingBlockHasFullContent) {
  // F[4; 3/2] has content 1 at every exponent up to 4/3
  const GridSet f = building_block(4, Rational(3, 2), 2);
  EXPECT_EQ(content(f, Rational(4, 3)), ContentValue::cube(Rational(4, 3), 0));
  EXPECT_EQ(content(f, Rational(1, 1)), ContentValue::cube(Rational(1, 1), 0));
  EXPECT_LT(compare(content(f, Rational(3, 2)), ContentValue::cube(Rational(3, 2), 0)), 0);
}

TEST(Content, Monotone) {
  std::mt19937_64 rng(3);
  const GridSet e = random_set(rng, 2, 4, 0.5);
  std::vector<Cell> sub(e.cells().begin(), e.cells().begin() + e.size() / 2);
  const GridSet f(2, 4, sub);
  EXPECT_LE(compare(content(f, Rational(3, 2)), content(e, Rational(3, 2))), 0);
}

TEST(Content, HighDensityCubes) {
  const GridSet full = GridSet::full(2, 3);
  const auto cubes = high_density_cubes(full, Rational(3, 2), 0.1);
  ASSERT_FALSE(cubes.empty());
  for (const auto& c : cubes) {
    EXPECT_GE(c.density_hi, 0.9);
    EXPECT_FALSE(c.ambiguous);
  }
  // a single cell has density 1 only in its own cube and is below 0.9 above level 1
  const GridSet one(2, 3, {Cell{0, 0, 0}});
  for (const auto& c : high_density_cubes(one, Rational(3, 2), 0.1)) EXPECT_GE(c.cube.level, 2);
}

TEST(Content, BoardmanOnLargeSets) {
  std::mt19937_64 rng(9);
  const GridSet e = random_set(rng, 2, 5, 0.85), f = random_set(rng, 2, 5, 0.85);
  const BoardmanResult r = boardman_difference_check(e, f, 0.3);
  EXPECT_TRUE(r.holds);
  EXPECT_GT(r.cells_checked, 0);
}
