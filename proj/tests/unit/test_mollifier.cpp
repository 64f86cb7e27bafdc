#include <gtest/gtest.h>

#include <cmath>

#include "steinhaus/errors.hpp"
#include "steinhaus/mollifier.hpp"
#include "steinhaus/params.hpp"

using namespace steinhaus;

TEST(Mollifier, TransformShape) {
  for (int d : {2, 3}) {
    const Mollifier m(MollifierSpec{d});
    EXPECT_NEAR(m.psi_hat(0.0), 1.0, 1e-12);
    EXPECT_NEAR(m.psi_hat(0.99), 1.0, 1e-12);
    EXPECT_NEAR(m.psi_hat(2.0), 0.0, 1e-14);
    EXPECT_GT(m.psi_hat(1.5), 0.2);
    EXPECT_LT(m.psi_hat(1.5), 0.8);
    double prev = 1;
    for (double r = 1.0; r <= 2.0; r += 0.05) {
      EXPECT_LE(m.psi_hat(r), prev + 1e-12);
      prev = m.psi_hat(r);
    }
  }
}

TEST(Mollifier, ValueAtOriginMatchesIntegral) {
  // psi(0) = (2 pi)^{-d} int psi^, by the trapezoid rule on the radial profile
  for (int d : {2, 3}) {
    const Mollifier m(MollifierSpec{d});
    const int n = 4000;
    double s = 0;
    for (int i = 0; i <= n; ++i) {
      const double r = 2.0 * i / n;
      const double w = (i == 0 || i == n) ? 0.5 : 1.0;
      s += w * m.psi_hat(r) * std::pow(r, d - 1);
    }
    s *= 2.0 / n;
    const double surface = d == 2 ? 2 * M_PI : 4 * M_PI;
    EXPECT_NEAR(m.psi(0.0), surface * s / std::pow(2 * M_PI, d), 1e-6);
  }
}

TEST(Mollifier, ReportGoldens) {
  const MollifierReport r2 = mollifier_report(Mollifier(MollifierSpec{2}), 20);
  EXPECT_NEAR(r2.psi0, 0.179, 1e-3);
  EXPECT_NEAR(r2.pairing_constant, 0.1538, 1e-3);
  EXPECT_NEAR(r2.reference_constant, std::pow(2.0, -8) * std::pow(M_PI, 3), 1e-12);
  EXPECT_GT(r2.min_quarter, 0);
  EXPECT_LT(r2.min_value, 0);  // psi^ == 1 near 0 rules out psi >= 0
  EXPECT_GT(r2.pairing_constant, r2.reference_constant);
}

TEST(Mollifier, Level) {
  for (int d : {2, 3})
    for (double e : {0.3, 0.01, 1e-5}) {
      const int M = choose_mollifier_level(d, e);
      const double lo = 8 * std::sqrt(d) / e;
      EXPECT_GE(std::ldexp(1.0, M), lo);
      EXPECT_LE(std::ldexp(1.0, M), 2 * lo);
    }
}
