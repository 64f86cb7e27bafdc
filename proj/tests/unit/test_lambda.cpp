#include <gtest/gtest.h>

#include <cmath>

#include "steinhaus/constructions.hpp"
#include "steinhaus/errors.hpp"
#include "steinhaus/lambda.hpp"
#include "steinhaus/measure.hpp"
#include "steinhaus/mollifier.hpp"
#include "steinhaus/params.hpp"
#include "steinhaus/spectral.hpp"

using namespace steinhaus;

namespace {
// Circle average of area([0,1]^2 cap ([0,1]^2 - t w)) for t <= 1.
double square_lambda(double t) { return 1 - 4 * t / M_PI + t * t / M_PI; }
}  // namespace

TEST(Lambda, OracleMatchesClosedForm) {
  const GridSet sq = GridSet::full(2, 0);
  for (double t : {0.05, 0.3, 0.9}) EXPECT_NEAR(lambda_oracle(sq, sq, t).value, square_lambda(t), 1e-7) << t;
  // same square cut into 64 cells
  const GridSet fine = GridSet::full(2, 3);
  EXPECT_NEAR(lambda_oracle(fine, fine, 0.3).value, square_lambda(0.3), 1e-7);
  const CellMeasure mu = CellMeasure::uniform(fine);
  EXPECT_NEAR(lambda_geometric(mu, mu, 0.3).value, square_lambda(0.3), 1e-7);
}

TEST(Lambda, FourierMatchesClosedForm) {
  const CellMeasure mu = CellMeasure::uniform(GridSet::full(2, 0));
  const std::vector<double> ts{0.1, 0.5, 1.0};
  const auto v = lambda_sweep(mu, mu, ts);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    EXPECT_NEAR(v[i].geometric.value, square_lambda(ts[i]), 1e-4) << ts[i];
    EXPECT_LE(std::fabs(v[i].geometric.value - square_lambda(ts[i])), v[i].geometric.err + 1e-5);
    EXPECT_TRUE(v[i].positive);
    EXPECT_NEAR(v[i].raw.value, v[i].geometric.value * 4 * M_PI * M_PI, 1e-9 * v[i].raw.value);
  }
  const LambdaValue one = lambda_mass(mu, mu, 0.5);
  EXPECT_NEAR(one.geometric.value, v[1].geometric.value, 1e-4);
}

TEST(Lambda, IteratedSetAgreement) {
  const GridSet f = building_block(4, Rational(3, 2), 2);
  const CellMeasure mu = CellMeasure::uniform(f);
  const LambdaValue v = lambda_mass(mu, mu, 0.05);
  EXPECT_NEAR(v.geometric.value, lambda_oracle(f, f, 0.05).value, 2e-5 * v.geometric.value);
  EXPECT_NEAR(lambda_oracle(f, f, 0.05).value, 2.166535, 1e-5);
}

TEST(Lambda, CubeOracleGolden) {
  const GridSet cube = GridSet::full(3, 0);
  EXPECT_NEAR(lambda_oracle(cube, cube, 1.0).value, 0.057042322, 2e-9);
  EXPECT_NEAR(lambda_oracle(cube, cube, 0.5).value, 0.399207355, 2e-9);
}

TEST(Lambda, DistinctMeasures) {
  const GridSet a(2, 1, {Cell{0, 0, 0}});
  const GridSet b(2, 1, {Cell{1, 0, 0}});
  // two adjacent half-squares at distance 0.5 + something: the oracle is the reference
  const CellMeasure ma = CellMeasure::uniform(a), mb = CellMeasure::uniform(b);
  for (double t : {0.25, 0.5}) {
    const LambdaValue v = lambda_mass(ma, mb, t);
    EXPECT_NEAR(v.geometric.value, lambda_oracle(a, b, t).value, 1e-3) << t;
  }
}

TEST(Lambda, DecompositionAtDeskScale) {
  const ParamBundle b = compute_parameters(2, 0.9, std::ldexp(1.0, -73), 5, 0.125);
  const SpectralGapMeasure sg = spectral_gap_measure(building_block(16, Rational(5, 4), 2), 2, Rational(5, 4));
  const double t = (b.a + b.b) / 2;
  const LambdaReport r = lambda_decomposition(sg.measure, t, b);
  EXPECT_NEAR(r.I1.value + r.I2.value + r.I3.value, r.total.value, r.total.err + r.I1.err + r.I2.err + r.I3.err);
  EXPECT_TRUE(r.i1_ok);
  EXPECT_TRUE(r.i2_ok);
  EXPECT_TRUE(r.i3_ok);
  EXPECT_TRUE(r.sigma_ok);
  // the spectral gap cannot be realised by a level-2 measure, so the chain does not close
  EXPECT_GT(r.gap_mass, b.a);
  EXPECT_FALSE(r.chain_holds);
  EXPECT_TRUE(r.total_ge_cd);
  EXPECT_THROW(lambda_decomposition(sg.measure, 2 * b.b, b), ParameterError);
}

TEST(Lambda, MollifiedAboveFloor) {
  const SpectralGapMeasure sg = spectral_gap_measure(building_block(16, Rational(5, 4), 2), 2, Rational(5, 4));
  const Mollifier psi(MollifierSpec{2});
  const MollifiedLambda m = mollified_lambda(sg.measure, sg.measure, 0.01, 0.1, psi);
  EXPECT_TRUE(m.above);
  EXPECT_NEAR(m.threshold, 4 * lambda_floor_constant(2), 1e-15);
  const Estimate p = mollified_pairing(sg.measure, sg.measure, 0.1, psi);
  EXPECT_GT(p.lo(), 0);
}

TEST(Spectral, ProximityAndGap) {
  const SpectralGapMeasure sg = spectral_gap_measure(building_block(16, Rational(5, 4), 2), 2, Rational(5, 4));
  const ProximityReport pr = spectral_proximity(sg.measure, 2);
  EXPECT_EQ(pr.samples, 1000u);
  EXPECT_EQ(pr.violations, 0u);
  EXPECT_NEAR(pr.worst_ratio, 0.03238, 1e-4);
  const ParamBundle b = compute_parameters(2, 0.9, std::ldexp(1.0, -73), 5, 0.125);
  const SpectralGapReport r = verify_spectral_gap(sg, b, {}, 200);
  EXPECT_FALSE(r.level_matches);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.gap_mass.lo(), r.threshold);
  EXPECT_DOUBLE_EQ(r.r_outer, std::pow(b.a, -b.N));
}
