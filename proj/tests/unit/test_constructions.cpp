#include <gtest/gtest.h>

#include <set>

#include "steinhaus/constructions.hpp"
#include "steinhaus/errors.hpp"

using namespace steinhaus;

TEST(Constructions, BuildingBlockShape) {
  const GridSet f = building_block(4, Rational(3, 2), 2);
  EXPECT_EQ(f.size(), 16u);
  EXPECT_EQ(f.resolution(), 3);
  EXPECT_EQ(grid_volume(f), Dyadic::parse("1/4"));
  std::set<std::pair<long, long>> corners;
  for (const auto& c : f.cells()) {
    EXPECT_EQ(c[0] % 2, 0);
    EXPECT_EQ(c[1] % 2, 0);
    corners.insert({c[0], c[1]});
  }
  EXPECT_EQ(corners.size(), 16u);
}

TEST(Constructions, BuildingBlockRejectsIrrationalSide) {
  EXPECT_THROW(building_block(8, Rational(5, 4), 2), ParameterError);
  EXPECT_THROW(building_block(6, Rational(3, 2), 2), ParameterError);
}

TEST(Constructions, IteratedSetSelfSimilar) {
  const GridSet e1 = building_block(4, Rational(3, 2), 2);
  const GridSet e3 = iterated_set(4, Rational(3, 2), 2, 3);
  EXPECT_EQ(e3.size(), 4096u);
  EXPECT_EQ(e3.resolution(), 9);
  EXPECT_EQ(grid_volume(e3), Dyadic::parse("1/64"));
  EXPECT_EQ(iterated_set(4, Rational(3, 2), 2, 1), e1);
  // every level-9 cell lies inside a level-3 cell of the first stage
  for (const auto& c : e3.cells()) EXPECT_TRUE(e1.contains_cell(Cell{c[0] >> 6, c[1] >> 6, 0}));
}

TEST(Constructions, LatticeBodyCounts) {
  const LatticeBody b = building_block_lattice(8, Rational(9, 8), 2);
  EXPECT_EQ(b.cell_count(), 65536);
  EXPECT_EQ(b.side(), Dyadic::pow2(-9));
  EXPECT_EQ(b.volume(), Dyadic::pow2(-2));
  const auto g = materialize(b);
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(grid_volume(*g), b.volume());
}

TEST(Constructions, ZeroDensityScales) {
  ZeroDensityOptions o;
  o.r = {1, 2, 3, 4, 5, 6};
  const ZeroDensity z = zero_density_blocks(o);
  EXPECT_EQ(z.log2q, (std::vector<int>{8, 24, 40, 48, 56, 64}));
  EXPECT_EQ(z.set.size(), 6u);
  // volume of block n is at most half of block n-1
  for (std::size_t n = 1; n < z.block_volume.size(); ++n) EXPECT_LE(z.block_volume[n].shifted(1), z.block_volume[n - 1]);
}

TEST(Constructions, RiceVariantMargins) {
  const RiceVariant rv = rice_variant(2, Rational(1, 1), 3);
  ASSERT_EQ(rv.d.size(), 3u);
  for (std::size_t j = 0; j < rv.d.size(); ++j) {
    EXPECT_GT(rv.margin[j], 0.0);
    if (j) EXPECT_GT(rv.d[j], rv.d[j - 1]);
    if (j) EXPECT_GE(rv.kappa_level[j], rv.kappa_level[j - 1]);
  }
}

TEST(Constructions, SteinhausUnionRounding) {
  // ratio 10/3, q^sigma = 8: ratio^1 < 8 <= ratio^2, so m = 1
  const SteinhausUnion u = steinhaus_union(4, Rational(3, 2), 2, 0.3, 1.0, 1);
  EXPECT_EQ(u.m, 1);
  ASSERT_EQ(u.u.size(), 2u);
  EXPECT_EQ(u.u[0], Dyadic(1));
  EXPECT_LE(u.u[1].to_double(), u.u_exact[1]);
  EXPECT_GE(u.u[1].exponent(), -48);
  EXPECT_LT(u.max_rounding_slack, 1e-13);
  EXPECT_EQ(u.set.size(), 2u);
  EXPECT_EQ(u.set.blocks()[1].offset[0], Dyadic(2));
}

TEST(Constructions, LatticeGridExample) {
  const GridSet e = lattice_grid_example(Dyadic::parse("1/4"), 8, 2);
  EXPECT_EQ(e.resolution(), 5);
  EXPECT_EQ(e.size(), 64u);
  EXPECT_EQ(grid_volume(e), Dyadic::parse("1/16"));
  EXPECT_THROW(lattice_grid_example(Dyadic::parse("1/4"), 6, 2), ParameterError);
}
