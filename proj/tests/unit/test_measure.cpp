#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "steinhaus/bump.hpp"
#include "steinhaus/constructions.hpp"
#include "steinhaus/errors.hpp"
#include "steinhaus/measure.hpp"
#include "steinhaus/params.hpp"

using namespace steinhaus;
using cd = std::complex<double>;

namespace {
// Direct cell-by-cell transform of the uniform measure on e (placement-free).
cd uniform_ft_oracle(const GridSet& e, const std::vector<double>& xi) {
  const double h = std::ldexp(1.0, -e.resolution());
  cd sum = 0;
  for (const auto& c : e.cells()) {
    cd term = 1;
    for (int k = 0; k < e.dim(); ++k) {
      const double u = h * xi[k];
      const cd box = std::abs(u) < 1e-12 ? cd(1) : (cd(1) - std::exp(cd(0, -u))) / cd(0, u);
      term *= std::exp(cd(0, -static_cast<double>(c[k]) * u)) * box;
    }
    sum += term;
  }
  return sum / static_cast<double>(e.size());
}
}  // namespace

TEST(Measure, UniformTransformMatchesDirectSum) {
  const GridSet e = building_block(4, Rational(3, 2), 2);
  const CellMeasure mu = CellMeasure::uniform(e);
  EXPECT_NEAR(mu.total_mass(), 1.0, 1e-15);
  EXPECT_TRUE(mu.product().has_value());
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-300, 300);
  for (int i = 0; i < 50; ++i) {
    const std::vector<double> xi{u(rng), u(rng)};
    EXPECT_LT(std::abs(mu.fourier(xi) - uniform_ft_oracle(e, xi)), 1e-12);
  }
  EXPECT_LT(std::abs(mu.fourier({0.0, 0.0}) - 1.0), 1e-15);
}

TEST(Measure, NonProductTransform) {
  const GridSet e(2, 2, {Cell{0, 0, 0}, Cell{1, 3, 0}, Cell{3, 1, 0}});
  const CellMeasure mu = CellMeasure::uniform(e);
  EXPECT_FALSE(mu.product().has_value());
  for (double a : {0.3, 7.0, 55.0}) {
    const std::vector<double> xi{a, -0.7 * a};
    EXPECT_LT(std::abs(mu.fourier(xi) - uniform_ft_oracle(e, xi)), 1e-13);
  }
}

TEST(Measure, PlancherelAndSupport) {
  const CellMeasure mu = CellMeasure::uniform(GridSet::full(2, 0));
  EXPECT_NEAR(mu.plancherel_total(), 4 * M_PI * M_PI, 1e-12);
  const GridSet e = building_block(4, Rational(3, 2), 2);
  const CellMeasure m2 = CellMeasure::uniform(e);
  EXPECT_EQ(m2.support(), e);
  // 16 cells of area 1/64 each with mass 1/16
  EXPECT_NEAR(m2.plancherel_total(), 4 * M_PI * M_PI * 4, 1e-9);
  EXPECT_NEAR(support_diameter(m2, m2), std::sqrt(2.0) * (7.0 / 8), 1e-12);
}

TEST(Measure, BoxTransform) {
  EXPECT_EQ(box_transform(0.0), cd(1));
  EXPECT_LT(std::abs(box_transform(2 * M_PI)), 1e-15);
  const std::vector<std::int64_t> c{0, 1, 5};
  const std::vector<double> w{0.2, 0.3, 0.5};
  cd ref = 0;
  for (int i = 0; i < 3; ++i) ref += w[i] * std::exp(cd(0, -c[i] * 0.37));
  EXPECT_LT(std::abs(lattice_phase_sum(c, w, 0.37) - ref), 1e-15);
}

TEST(Bump, FourierMatchesQuadrature) {
  // 1D: int_0^1 (1 - cos 2 pi x) e^{-i x xi} dx by composite Simpson
  for (double xi : {0.0, 1.0, 6.0, 40.0}) {
    const int n = 4000;
    cd s = 0;
    for (int i = 0; i <= n; ++i) {
      const double x = static_cast<double>(i) / n;
      const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
      s += w * (1 - std::cos(2 * M_PI * x)) * std::exp(cd(0, -x * xi));
    }
    s /= 3.0 * n;
    EXPECT_LT(std::abs(RaisedCosine::fourier_1d(xi) - s), 1e-10) << xi;
  }
  EXPECT_NEAR(RaisedCosine::interval_weight(Dyadic(0), Dyadic(1)), 1.0, 1e-15);
  EXPECT_NEAR(RaisedCosine::interval_weight(Dyadic(0), Dyadic::parse("1/2")), 0.5, 1e-15);
  EXPECT_NEAR(RaisedCosine::interval_weight(Dyadic(0), Dyadic::parse("1/4")), 0.25 - 1 / (2 * M_PI), 1e-15);
  for (int T : {1, 2, 5}) EXPECT_TRUE(bump_weights_sum_to_one(2, T));
}

TEST(Params, Constants) {
  EXPECT_NEAR(unit_ball_volume(2), M_PI, 1e-15);
  EXPECT_NEAR(unit_ball_volume(3), 4 * M_PI / 3, 1e-15);
  EXPECT_NEAR(lambda_floor_constant(2), M_PI / 128, 1e-15);
  EXPECT_NEAR(content_margin(2, 3, 2.0), 1 - std::ldexp(1.0, -9) - 1 + std::ldexp(1.0, -7), 1e-15);
  EXPECT_NEAR(content_margin_below(2, 3, 1e-12), content_margin(2, 3, 2 - 1e-12), 1e-12);
}

TEST(Params, FeasibleBundle) {
  const ParamBundle b = compute_parameters(2, 0.9, std::ldexp(1.0, -73), 5, 0.125);
  EXPECT_TRUE(b.feasible()) << b.first_violation();
  EXPECT_EQ(b.T, 35);
  EXPECT_LT(b.a, b.b);
  EXPECT_LE(2 * b.b, b.delta);
  EXPECT_GT(b.c0, 0);
  EXPECT_LT(b.c0, 1.0 / (2 * (5 * 3 + 1)));
  EXPECT_LE(b.eps, b.eps_max);
  for (const auto& c : b.checks) EXPECT_TRUE(c.ok) << c.name;
}

TEST(Params, InfeasibleBundleRejected) {
  const ParamBundle b = compute_parameters(2, 0.9, std::ldexp(1.0, -11), 5, 0.125);
  EXPECT_EQ(b.T, 4);
  EXPECT_FALSE(b.feasible());
  EXPECT_THROW(select_parameters(2, 0.9, std::ldexp(1.0, -11), 5, 0.125), ParameterError);
  EXPECT_THROW(select_parameters(4, 0.9, 0.01, 5, 0.125), ParameterError);
}

TEST(SpectralGapMeasure, ExactCubeMasses) {
  const GridSet f = building_block(16, Rational(5, 4), 2);
  for (int T : {2, 3}) {
    const SpectralGapMeasure sg = spectral_gap_measure(f, T, Rational(5, 4));
    const MassAudit a = audit_cube_masses(sg);
    EXPECT_EQ(a.cubes, static_cast<std::size_t>(1) << (2 * T));
    EXPECT_EQ(a.exact_matches, a.cubes);
    EXPECT_TRUE(a.weights_sum_exact);
    EXPECT_NEAR(a.total_mass, 1.0, 1e-14);
    for (const auto& q : sg.cubes) EXPECT_NEAR(sg.measure.mass_in_cube(q.cube), q.weight, 1e-15);
  }
}

TEST(SpectralGapMeasure, RejectsThinSets) {
  const GridSet e(2, 4, {Cell{0, 0, 0}});
  EXPECT_THROW(spectral_gap_measure(e, 2, Rational(5, 4)), ParameterError);
}

TEST(SpectralGapMeasure, BallCondition) {
  const SpectralGapMeasure sg = spectral_gap_measure(building_block(16, Rational(5, 4), 2), 2, Rational(5, 4));
  const BallCondition b1 = ball_condition(sg.measure, 1.25, {sg.measure.resolution() + 1, 6});
  const BallCondition b2 = ball_condition(sg.measure, 1.25, {sg.measure.resolution() + 2, 6});
  EXPECT_GE(b1.a_est, b1.a_lower);
  EXPECT_NEAR(b1.a_est, 3.037, 5e-3);
  EXPECT_LE(std::fabs(b2.a_est - b1.a_est), 0.1 * b1.a_est);
}
