#pragma once

#include <complex>
#include <vector>

#include "steinhaus/dyadic.hpp"

namespace steinhaus {

// phi(x) = prod_j (1 - cos 2 pi x_j) on [0,1]^d; integrates to 1.
struct RaisedCosine {
  int dim = 2;

  double value(const std::vector<double>& x) const;
  std::complex<double> fourier(const std::vector<double>& xi) const;
  // integral of phi over a dyadic cube, as a product of 1D factors
  double cube_weight(const DyadicCube& q) const;

  static std::complex<double> fourier_1d(double xi);
  // integral of 1 - cos 2 pi x over [a, b]
  static double interval_weight(const Dyadic& a, const Dyadic& b);
  // sup_xi (1 + |xi|)^3 |phi^_1(xi)|, computed once
  static double decay_constant();
};

// Exact check that the level-T cube weights of phi sum to 1: per axis, the dyadic parts
// telescope to 1 and the sine parts to sin(2 pi) - sin(0) = 0.
bool bump_weights_sum_to_one(int dim, int level);

}  // namespace steinhaus
