#include <gtest/gtest.h>

#include <cmath>

#include "steinhaus/asymptotics.hpp"
#include "steinhaus/constructions.hpp"
#include "steinhaus/errors.hpp"
#include "steinhaus/measure.hpp"

using namespace steinhaus;

TEST(Asymptotics, DeltaSelector) {
  const double dl = delta_selector(3, 0.25, 1, 4);
  EXPECT_DOUBLE_EQ(dl, 1.5256926701512352e-05);
  EXPECT_LT(dl + std::pow(4.0, 3) * std::pow(dl, 1.0 - 0.5), 0.25);
  EXPECT_GT(std::pow(dl, -2), 1.0);
  // 2^-40 relative above the returned value the inequality already fails
  const double up = dl * (1 + std::ldexp(1.0, -36));
  EXPECT_GE(up + 64 * std::sqrt(up), 0.25);
  EXPECT_GT(delta_selector(3, 0.25, 1, 8), delta_selector(3, 0.25, 1, 16));
  EXPECT_GT(delta_selector(3, 0.25, 1, 16), delta_selector(3, 0.25, 1, 64));
  EXPECT_THROW(delta_selector(3, 0.6, 1, 4), ParameterError);
  EXPECT_THROW(delta_selector(3, 0.25, 1, 2), ParameterError);
}

TEST(Asymptotics, GrowthProfile) {
  const CellMeasure mu = CellMeasure::uniform(iterated_set(4, Rational(3, 2), 2, 3));
  std::vector<double> T;
  for (int k = 0; k < 13; ++k) T.push_back(std::pow(10.0, k * 0.25));
  const GrowthProfile p = growth_profile(mu, T, 4.0 / 3);
  ASSERT_EQ(p.samples.size(), 13u);
  EXPECT_NEAR(p.exponent, 0.716, 5e-3);
  EXPECT_NEAR(p.nominal_gap, 2 - 4.0 / 3, 1e-15);
  EXPECT_GE(p.C0_emp, 1.0);
  EXPECT_THROW(growth_profile(mu, {1, 2, 3}), ParameterError);
}

TEST(Asymptotics, RjSpacingIsExact) {
  const CellMeasure mu = CellMeasure::uniform(GridSet::full(2, 0));
  const double delta = 0.25;
  // R_{j+1} / R_j must exceed delta^{-2} = 16
  const RjCheck bad = rj_check(mu, {2, 32}, delta, 4);
  EXPECT_EQ(bad.spacing, Verdict::Pass);
  const RjCheck tight = rj_check(mu, {2, 30}, delta, 4);
  EXPECT_EQ(tight.spacing, Verdict::Fail);
  EXPECT_FALSE(tight.passes());
}

TEST(Asymptotics, LacunaryPlan) {
  const LacunaryPlan p = lacunary_block_plan(0.25, 0.5, 1.0, 2, 2.0, 4, 0.125);
  EXPECT_EQ(p.m, 7);
  EXPECT_EQ(p.J0, 15);
  EXPECT_TRUE(p.ratio_ok);
  EXPECT_EQ(p.log2_R.size(), 15u);
  LacunarySeq s;
  s.values = {1, 0.5, 0.25, 0.0625};
  s.tau1 = 0.25;
  s.tau2 = 0.5;
  EXPECT_TRUE(s.valid());
  s.values.push_back(0.01);
  EXPECT_FALSE(s.valid());
}

TEST(Asymptotics, BourgainScanOnSquare) {
  const BourgainScan b = bourgain_block_scan(GridSet::full(2, 0), {0.9, 0.4, 0.15});
  ASSERT_EQ(b.values.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    const double t = std::vector<double>{0.9, 0.4, 0.15}[i];
    EXPECT_NEAR(b.values[i].value, 1 - 4 * t / M_PI + t * t / M_PI, 1e-7);
  }
  EXPECT_EQ(b.first, std::optional<int>(2));
  EXPECT_THROW(bourgain_block_scan(GridSet::full(2, 0), {0.9, 0.5}), ParameterError);
}

TEST(Asymptotics, VerdictNames) {
  EXPECT_EQ(to_string(Verdict::Pass), "pass");
  EXPECT_EQ(to_string(Verdict::Indeterminate), "indeterminate");
}
