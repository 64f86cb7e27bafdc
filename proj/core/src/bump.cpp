#include "steinhaus/bump.hpp"

#include <cmath>
#include <numbers>

namespace steinhaus {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// (1 - e^{-i eps}) / eps, accurate for small eps
std::complex<double> one_minus_exp_over(double eps) {
  if (std::fabs(eps) < 1e-5) return {eps / 2 - eps * eps * eps / 24, 1 - eps * eps / 6};
  const double s = std::sin(eps / 2);
  return {2 * s * s / eps, std::sin(eps) / eps};
}

}  // namespace

std::complex<double> RaisedCosine::fourier_1d(double xi) {
  if (xi < 0) return std::conj(fourier_1d(-xi));
  // phi^_1(xi) = 4 pi^2 (1 - e^{-i xi}) / (i xi (4 pi^2 - xi^2))
  const std::complex<double> i(0, 1);
  if (std::fabs(xi - kTwoPi) < 1e-3) {
    const double eps = xi - kTwoPi;
    // (1 - e^{-i xi}) / (2 pi - xi) = -(1 - e^{-i eps}) / eps
    return 4 * std::numbers::pi * std::numbers::pi * (-one_minus_exp_over(eps)) / (i * xi * (kTwoPi + xi));
  }
  if (xi < 1e-3) {
    // expand around 0 through box(xi) / (1 - (xi / 2 pi)^2)
    const std::complex<double> box = -i * one_minus_exp_over(xi);
    return box / (1 - (xi / kTwoPi) * (xi / kTwoPi));
  }
  const std::complex<double> box = (1.0 - std::exp(-i * xi)) / (i * xi);
  return box / (1 - (xi / kTwoPi) * (xi / kTwoPi));
}

double RaisedCosine::value(const std::vector<double>& x) const {
  double v = 1;
  for (int j = 0; j < dim; ++j) {
    if (x[j] < 0 || x[j] > 1) return 0;
    v *= 1 - std::cos(kTwoPi * x[j]);
  }
  return v;
}

std::complex<double> RaisedCosine::fourier(const std::vector<double>& xi) const {
  std::complex<double> v = 1;
  for (int j = 0; j < dim; ++j) v *= fourier_1d(xi[j]);
  return v;
}

double RaisedCosine::interval_weight(const Dyadic& a, const Dyadic& b) {
  const double len = (b - a).to_double();
  const double sa = std::sin(kTwoPi * a.to_double()), sb = std::sin(kTwoPi * b.to_double());
  return len - (sb - sa) / kTwoPi;
}

double RaisedCosine::cube_weight(const DyadicCube& q) const {
  double w = 1;
  for (int j = 0; j < q.dim; ++j) {
    const Dyadic a = Dyadic(q.corner[j]).shifted(-q.level);
    w *= interval_weight(a, a + q.side());
  }
  return w;
}

double RaisedCosine::decay_constant() {
  static const double c = [] {
    double best = 0;
    for (int k = 0; k <= 400000; ++k) {
      const double xi = k * 5e-4;
      best = std::max(best, std::pow(1 + xi, 3) * std::abs(fourier_1d(xi)));
    }
    // beyond 200: |phi^_1| <= 2 * 4 pi^2 / (xi (xi^2 - 4 pi^2)), and (1+xi)^3 / (xi^3 - 4 pi^2 xi) decreases
    const double xi = 200;
    best = std::max(best, 8 * std::numbers::pi * std::numbers::pi * std::pow(1 + xi, 3) / (xi * (xi * xi - kTwoPi * kTwoPi)));
    return best;
  }();
  return c;
}

bool bump_weights_sum_to_one(int dim, int level) {
  if (dim < 1 || level < 0) return false;
  // dyadic part: sum of interval lengths over the level partition of [0,1]
  Dyadic len = 0;
  const long n = 1L << level;
  for (long k = 0; k < n; ++k) len += Dyadic::pow2(-level);
  // sine part telescopes: sum_k sin(2 pi (k+1)/n) - sin(2 pi k/n) = sin(2 pi) - sin(0); both endpoints
  // are integers so the sine values are exactly zero
  const Dyadic first = 0, last = Dyadic(n).shifted(-level);
  return len == Dyadic(1) && first.is_integer() && last.is_integer();
}

}  // namespace steinhaus
