#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "steinhaus/constructions.hpp"
#include "steinhaus/distance.hpp"
#include "steinhaus/intervals.hpp"

using namespace steinhaus;

namespace {

GridSet random_set(std::mt19937_64& rng, int L, double p) {
  std::bernoulli_distribution b(p);
  std::vector<Cell> cells;
  for (int i = 0; i < (1 << L); ++i)
    for (int j = 0; j < (1 << L); ++j)
      if (b(rng)) cells.push_back(Cell{i, j, 0});
  if (cells.empty()) cells.push_back(Cell{});
  return GridSet(2, L, cells);
}

// Squared-norm ranges of cell differences, merged in integer arithmetic (units of h^2).
std::vector<std::pair<long, long>> naive_delta_sq(const GridSet& e) {
  std::vector<std::pair<long, long>> r;
  for (const auto& a : e.cells())
    for (const auto& b : e.cells()) {
      long lo = 0, hi = 0;
      for (int k = 0; k < 2; ++k) {
        const long dk = b[k] - a[k];  // x_k - y_k ranges over [dk - 1, dk + 1]
        const long mn = dk - 1 <= 0 && dk + 1 >= 0 ? 0 : std::min(std::labs(dk - 1), std::labs(dk + 1));
        const long mx = std::max(std::labs(dk - 1), std::labs(dk + 1));
        lo += mn * mn;
        hi += mx * mx;
      }
      r.push_back({lo, hi});
    }
  std::sort(r.begin(), r.end());
  std::vector<std::pair<long, long>> m;
  for (const auto& x : r)
    if (!m.empty() && x.first <= m.back().second)
      m.back().second = std::max(m.back().second, x.second);
    else
      m.push_back(x);
  return m;
}

}  // namespace

TEST(Intervals, BoxNormRange) {
  const NormRange r = box_norm_range({Dyadic(-1), Dyadic(2)}, {Dyadic(1), Dyadic(3)});
  EXPECT_EQ(r.lo_sq, Dyadic(4));
  EXPECT_EQ(r.hi_sq, Dyadic(10));
  EXPECT_DOUBLE_EQ(r.hi(), std::sqrt(10.0));
}

TEST(Intervals, MergeAndContain) {
  const IntervalSet s = IntervalSet::from_ranges({{Dyadic(4), Dyadic(9)}, {Dyadic(0), Dyadic(1)}, {Dyadic(9), Dyadic(16)}});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.intervals()[1].hi_sq, Dyadic(16));
  EXPECT_TRUE(s.contains(Dyadic(3)));
  EXPECT_FALSE(s.contains(Dyadic::parse("3/2")));
  EXPECT_TRUE(s.contains(Dyadic(1)));
  EXPECT_TRUE(s.contains_interval(Dyadic(2), Dyadic(4)));
  EXPECT_FALSE(s.contains_interval(Dyadic(1), Dyadic(2)));
  EXPECT_EQ(s.find(Dyadic(3)), std::optional<std::size_t>(1));
  EXPECT_TRUE(s.subset_of(s.united(IntervalSet::from_ranges({{Dyadic(25), Dyadic(36)}}))));
  EXPECT_EQ(s.scaled(Dyadic(2)).intervals()[1].hi_sq, Dyadic(64));
}

TEST(Distance, MatchesNaivePairEnumeration) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 15; ++i) {
    const GridSet e = random_set(rng, 1 + i % 4, 0.3);
    const IntervalSet ds = distance_set(e);
    const auto naive = naive_delta_sq(e);
    ASSERT_EQ(ds.size(), naive.size());
    const Dyadic h2 = Dyadic::pow2(-2 * e.resolution());
    for (std::size_t k = 0; k < naive.size(); ++k) {
      EXPECT_EQ(ds.intervals()[k].lo_sq, Dyadic(naive[k].first) * h2);
      EXPECT_EQ(ds.intervals()[k].hi_sq, Dyadic(naive[k].second) * h2);
    }
  }
}

TEST(Distance, SampledPairsLieInDelta) {
  std::mt19937_64 rng(4);
  const GridSet e = random_set(rng, 3, 0.3);
  const IntervalSet ds = distance_set(e);
  std::uniform_int_distribution<std::size_t> pick(0, e.size() - 1);
  std::uniform_int_distribution<long> u(0, 1023);
  for (int i = 0; i < 2000; ++i) {
    const Cell& a = e.cells()[pick(rng)];
    const Cell& b = e.cells()[pick(rng)];
    Dyadic sq(0);
    for (int k = 0; k < 2; ++k) {
      const Dyadic x = Dyadic(a[k]) + Dyadic(mpz_class(u(rng)), -10);
      const Dyadic y = Dyadic(b[k]) + Dyadic(mpz_class(u(rng)), -10);
      sq += (x - y).square();
    }
    sq = sq.shifted(-6);
    bool in = false;
    for (const auto& iv : ds.intervals()) in = in || (iv.lo_sq <= sq && sq <= iv.hi_sq);
    EXPECT_TRUE(in);
  }
}

TEST(Distance, GridExampleInitialInterval) {
  const IntervalSet de = distance_set(lattice_grid_example(Dyadic::parse("1/4"), 8, 2));
  EXPECT_EQ(de.intervals().front().lo_sq, Dyadic(0));
  EXPECT_EQ(de.intervals().front().hi_sq, Dyadic::parse("1/512"));
  const SteinhausResult st = steinhaus_check(de);
  EXPECT_TRUE(st.has_zero_interval);
  EXPECT_EQ(st.a_sq, Dyadic::parse("1/512"));
}

TEST(Distance, TwoSetsSymmetric) {
  std::mt19937_64 rng(8);
  const GridSet e = random_set(rng, 3, 0.2), f = random_set(rng, 3, 0.2);
  EXPECT_EQ(distance_set(e, f), distance_set(f, e));
}

TEST(Distance, BlockLemmaGoldens) {
  const BlockLemmaReport r = verify_block_lemma(256, Rational(5, 4), 2);
  EXPECT_EQ(r.initial_disjoint_count, 1u);
  EXPECT_FALSE(r.degenerate);
  EXPECT_EQ(r.delta.intervals().front().lo_sq, Dyadic(0));
  EXPECT_EQ(r.delta.intervals().front().hi_sq, Dyadic::parse("1/2^19"));
  EXPECT_EQ(r.tail.lo_sq, Dyadic::parse("9/2^20"));
  EXPECT_EQ(r.tail.hi_sq, Dyadic::parse("1042441/2^19"));
  const BlockLemmaReport r16 = verify_block_lemma(16, Rational(5, 4), 2);
  EXPECT_TRUE(r16.degenerate);
  EXPECT_EQ(r16.tail.hi_sq, Dyadic::parse("961/2^9"));
}

TEST(Distance, ZeroDensityCoverage) {
  ZeroDensityOptions o;
  o.r = {1, 2, 3, 4, 5, 6};
  const ZeroDensity z = zero_density_blocks(o);
  for (const auto& c : coverage_check(z.set, Dyadic(0), {Dyadic(1), Dyadic::parse("2.5"), Dyadic(10)}))
    EXPECT_EQ(c.status, Coverage::Covered) << c.t.str() << " " << c.detail;
}

TEST(Distance, RiceDistancesAvoided) {
  const RiceVariant rv = rice_variant(2, Rational(1, 1), 3);
  for (const auto& c : coverage_check(rv.set, Dyadic(0), rv.d))
    EXPECT_EQ(c.status, Coverage::NotCovered) << c.t.to_double() << " " << c.detail;
}

TEST(Distance, GrowthRatio) {
  EXPECT_TRUE(growth_ratio_ok({1, 2, 4, 8}, 2.0));
  EXPECT_FALSE(growth_ratio_ok({1, 2, 5}, 2.0));
  EXPECT_FALSE(growth_ratio_ok({1, 1}, 2.0));
}
