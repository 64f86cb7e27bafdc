#include <gtest/gtest.h>

#include <cmath>

#include "steinhaus/constructions.hpp"
#include "steinhaus/energy.hpp"
#include "steinhaus/errors.hpp"
#include "steinhaus/measure.hpp"
#include "steinhaus/quadrature.hpp"
#include "steinhaus/sphere.hpp"

using namespace steinhaus;

namespace {
double sinc2(double u) {
  if (std::fabs(u) < 1e-8) return 1.0;
  const double s = std::sin(u / 2) / (u / 2);
  return s * s;
}
// F(T) for the uniform measure on [0,1]^2 by a polar midpoint rule on one quadrant.
double partial_l2_square_oracle(double T) {
  const int nr = 1500, nt = 1500;
  double sum = 0;
  for (int i = 0; i < nr; ++i) {
    const double r = (i + 0.5) * T / nr;
    for (int j = 0; j < nt; ++j) {
      const double th = (j + 0.5) * (M_PI / 2) / nt;
      sum += sinc2(r * std::cos(th)) * sinc2(r * std::sin(th)) * r;
    }
  }
  return 4 * sum * (T / nr) * (M_PI / 2 / nt);
}
}  // namespace

TEST(Sphere, BesselAgainstStd) {
  for (double r : {0.0, 0.5, 3.0, 11.9, 12.1, 19.9, 20.1, 55.5, 1234.5}) EXPECT_NEAR(bessel_j0(r), std::cyl_bessel_j(0.0, r), 1e-12) << r;
  for (double r : {0.1, 1.0, 7.7, 300.0}) EXPECT_NEAR(sphere_ft(3, r), std::sin(r) / r, 1e-14);
  EXPECT_DOUBLE_EQ(sphere_ft(3, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(sphere_ft(2, 0.0), 1.0);
}

TEST(Sphere, DecayAndSupBounds) {
  for (int d : {2, 3}) {
    const double C = sphere_decay_constant(d);
    double running = 0;
    std::vector<double> rs;
    for (double r = 0; r < 200; r += 0.01) rs.push_back(r);
    for (double r : rs) EXPECT_LE(std::fabs(sphere_ft(d, r)), C * std::pow(1 + r, -(d - 1) / 2.0) + 1e-15);
    // sup beyond r bounds every later sample
    for (auto it = rs.rbegin(); it != rs.rend(); ++it) {
      running = std::max(running, std::fabs(sphere_ft(d, *it)));
      if (static_cast<long>(*it * 100) % 500 == 0) EXPECT_GE(sphere_ft_sup_beyond(d, *it), running);
    }
  }
}

TEST(Quadrature, PartialL2AgainstPolarOracle) {
  const CellMeasure mu = CellMeasure::uniform(GridSet::full(2, 0));
  for (double T : {0.5, 5.0, 20.0}) {
    const Estimate e = partial_l2(mu, T);
    const double ref = partial_l2_square_oracle(T);
    EXPECT_NEAR(e.value, ref, 1e-5 * ref + e.err) << T;
  }
}

TEST(Quadrature, PartialL2Monotone) {
  const CellMeasure mu = CellMeasure::uniform(iterated_set(4, Rational(3, 2), 2, 2));
  const auto prof = partial_l2_profile(mu, {1, 4, 16, 64, 256});
  for (std::size_t i = 1; i < prof.size(); ++i) EXPECT_GE(prof[i].hi(), prof[i - 1].lo());
  EXPECT_LE(prof.back().lo(), mu.plancherel_total());
}

TEST(Quadrature, Budget) {
  QuadSpec q;
  q.max_nodes = 1000;
  q.refinements = 0;
  const CellMeasure mu = CellMeasure::uniform(iterated_set(4, Rational(3, 2), 2, 2));
  EXPECT_THROW(partial_l2(mu, 500, q), Error);
}

TEST(Energy, RieszGamma) {
  // d = 2, s = 1: pi^0 Gamma(1/2) / Gamma(1/2) = 1
  EXPECT_NEAR(riesz_gamma(2, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(riesz_gamma(3, 1.0), std::pow(M_PI, -0.5) * std::tgamma(1.0) / std::tgamma(0.5), 1e-15);
}

TEST(Energy, UnitSquareClosedForm) {
  // int int |x - y|^{-1} over [0,1]^2 x [0,1]^2 = 4 log(1 + sqrt 2) - (4/3)(sqrt 2 - 1)
  const double exact = 4 * std::log(1 + std::sqrt(2.0)) - 4.0 / 3 * (std::sqrt(2.0) - 1);
  const CellMeasure mu = CellMeasure::uniform(GridSet::full(2, 0));
  const EnergyResult r = energy(mu, 1.0, EnergyMethod::Direct);
  EXPECT_NEAR(r.value.value, exact, 1e-6);
  const CellMeasure fine = CellMeasure::uniform(GridSet::full(2, 3));
  EXPECT_NEAR(energy(fine, 1.0, EnergyMethod::Direct).value.value, exact, 1e-6);
}

TEST(Energy, DirectVersusFourier) {
  const CellMeasure mu = CellMeasure::uniform(GridSet::full(2, 0));
  const EnergyResult d = energy(mu, 1.5, EnergyMethod::Direct);
  const EnergyResult f = energy(mu, 1.5, EnergyMethod::Fourier);
  EXPECT_NEAR(d.value.value, 8.0556093, 1e-6);
  EXPECT_NEAR(f.value.value, d.value.value, 1e-3 * d.value.value);
  EXPECT_GT(f.tail_bound, 0);
}

TEST(Energy, KernelSymmetry) {
  const double a = cell_pair_kernel(2, 1.5, Cell{2, 1, 0});
  EXPECT_NEAR(a, cell_pair_kernel(2, 1.5, Cell{-2, -1, 0}), 1e-14);
  EXPECT_NEAR(a, cell_pair_kernel(2, 1.5, Cell{1, 2, 0}), 1e-14);
  // far apart: close to the point-mass value
  EXPECT_NEAR(cell_pair_kernel(2, 1.5, Cell{40, 0, 0}), std::pow(40.0, -1.5), 1e-6);
}
