#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "steinhaus/errors.hpp"
#include "steinhaus/numtheory.hpp"

using namespace steinhaus;

namespace {
bool naive_rep(std::uint64_t k, int m) {
  if (m == 0) return k == 0;
  for (std::uint64_t a = 0; a * a <= k; ++a)
    if (naive_rep(k - a * a, m - 1)) return true;
  return false;
}
}  // namespace

TEST(NumTheory, TableMatchesNaive) {
  const auto tab = build_table(400, 4);
  for (std::uint64_t k = 0; k <= 400; ++k)
    for (int m = 1; m <= 4; ++m) EXPECT_EQ(tab.entry(k, m), naive_rep(k, m)) << k << " " << m;
  EXPECT_FALSE(tab.entry(7, 3));
  EXPECT_TRUE(tab.entry(7, 4));
  EXPECT_EQ(tab.next_representable(19, 2), std::optional<std::uint64_t>(20));
}

TEST(NumTheory, LagrangeUpTo1e5) {
  const auto tab = build_table(100000, 4);
  for (std::uint64_t k = 0; k <= 100000; ++k) ASSERT_TRUE(tab.entry(k, 4)) << k;
}

TEST(NumTheory, TableBudget) { EXPECT_THROW(build_table(kTableBudget + 1, 4), SizeError); }

TEST(NumTheory, BambahChowla) {
  const BambahScan s = bambah_chowla_scan(1154, 200000);
  EXPECT_TRUE(s.violations.empty());
  EXPECT_EQ(s.first_witness, 1156u);  // 34^2
  EXPECT_THROW(bambah_chowla_scan(1, 1153), ParameterError);
}

TEST(NumTheory, SquaredNormsMatchEnumeration) {
  const auto v = lattice_squared_norms(5, 2, 100);
  std::set<std::uint64_t> ref;
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      if (a * a + b * b <= 100) ref.insert(a * a + b * b);
  EXPECT_EQ(std::vector<std::uint64_t>(ref.begin(), ref.end()), v);
}

TEST(NumTheory, GapCheck) {
  const GapReport g = r_set_gap_check(64, 1.25, 2, 8, 64, 1.0, 4);
  ASSERT_TRUE(g.max_gap.has_value());
  EXPECT_GT(g.count, 100u);
  EXPECT_EQ(g.window_gaps.size(), 4u);
  EXPECT_DOUBLE_EQ(g.bound, 2 * std::pow(64.0, -0.25));
  EXPECT_EQ(g.within_bound, *g.max_gap <= g.bound);
  for (double w : g.window_gaps) EXPECT_LE(w, *g.max_gap);
}
