#include "steinhaus/sphere.hpp"

#include <algorithm>
#include <cmath>

#include "steinhaus/errors.hpp"

namespace steinhaus {

namespace {

long double j0_series(long double r) {
  const long double x = -r * r / 4;
  long double term = 1, sum = 1;
  for (int k = 1; k < 200; ++k) {
    term *= x / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-22L * std::max(1.0L, std::fabs(sum))) break;
  }
  return sum;
}

// Hankel expansion summed up to its smallest term.
long double j0_hankel(long double r) {
  long double p = 0, q = 0, term = 1, prev = INFINITY;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) term *= static_cast<long double>((2 * k - 1) * (2 * k - 1)) / (8.0L * k * r);
    if (term > prev) break;
    prev = term;
    const long double sgn = ((k / 2) % 2 == 0) ? 1 : -1;
    // P = 1 - 9/(128 r^2) + ..., Q = -1/(8 r) + 75/(1024 r^3) - ...
    if (k % 2 == 0)
      p += sgn * term;
    else
      q -= sgn * term;
    if (term < 1e-21L) break;
  }
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double chi = r - pi / 4;
  return std::sqrt(2 / (pi * r)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double r) {
  r = std::fabs(r);
  if (r < 20) return static_cast<double>(j0_series(r));
  return static_cast<double>(j0_hankel(r));
}

double sphere_ft(int d, double r) {
  r = std::fabs(r);
  if (d == 2) return bessel_j0(r);
  if (d == 3) {
    if (r < 1e-4) return 1 - r * r / 6 + r * r * r * r / 120;
    return std::sin(r) / r;
  }
  throw ParameterError("sphere_ft supports d = 2, 3");
}

double sphere_decay_constant(int d) {
  // d = 2: max of |J0(r)| sqrt(1 + r) is about 1.155 near r = 0.6
  if (d == 2) return 1.2;
  if (d == 3) return 2.0;
  throw ParameterError("sphere_decay_constant supports d = 2, 3");
}

double sphere_ft_sup_beyond(int d, double r) {
  return std::min(1.0, sphere_decay_constant(d) * std::pow(1 + std::max(0.0, r), -(d - 1) / 2.0));
}

}  // namespace steinhaus
