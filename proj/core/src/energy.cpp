#include "steinhaus/energy.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "steinhaus/errors.hpp"

namespace steinhaus {

double riesz_gamma(int d, double s) {
  return std::pow(std::numbers::pi, s - d / 2.0) * std::tgamma((d - s) / 2) / std::tgamma(s / 2);
}

namespace {

// Gauss-Legendre nodes and weights on [0, 1]
struct GL {
  std::vector<double> x, w;
  explicit GL(int n) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        const double dp = n * (z * p1 - p0) / (z * z - 1);
        const double dz = p1 / dp;
        z -= dz;
        if (std::fabs(dz) < 1e-16) break;
      }
      double p0 = 1, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (z * p1 - p0) / (z * z - 1);
      x[i] = (1 - z) / 2;
      w[i] = 1 / ((1 - z * z) * dp * dp);
    }
  }
};

const GL& gl(int n) {
  static std::map<int, GL> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, GL(n)).first;
  return it->second;
}

// integral over [0,1]^d of prod_j (a_j + b_j w_j) |w|^{-s}; the singularity sits at w = 0
double singular_corner(int d, double s, const double* a, const double* b, int order) {
  const GL& g = gl(order);
  double total = 0;
  // faces {w_i = 1}; w = rho p with p on the face, dw = rho^{d-1} d rho dp
  for (int face = 0; face < d; ++face) {
    const int free = d - 1;
    std::size_t count = 1;
    for (int k = 0; k < free; ++k) count *= g.x.size();
    for (std::size_t idx = 0; idx < count; ++idx) {
      double p[3], wt = 1;
      std::size_t r = idx;
      for (int j = 0, k = 0; j < d; ++j) {
        if (j == face) {
          p[j] = 1;
          continue;
        }
        const std::size_t m = r % g.x.size();
        r /= g.x.size();
        p[j] = g.x[m];
        wt *= g.w[m];
        ++k;
      }
      double norm2 = 0;
      for (int j = 0; j < d; ++j) norm2 += p[j] * p[j];
      // polynomial in rho: prod_j (a_j + b_j p_j rho)
      double c[4] = {1, 0, 0, 0};
      for (int j = 0; j < d; ++j) {
        for (int m = j + 1; m >= 1; --m) c[m] = c[m] * a[j] + c[m - 1] * b[j] * p[j];
        c[0] *= a[j];
      }
      double inner = 0;
      for (int m = 0; m <= d; ++m) inner += c[m] / (m + d - s);
      total += wt * std::pow(norm2, -s / 2) * inner;
    }
  }
  return total;
}

// smooth orthant piece: integral over v in [0,1]^d of prod (1 - v_j) |k + sigma v|^{-s}
double smooth_piece(int d, double s, const Cell& k, const int* sigma, int order) {
  const GL& g = gl(order);
  const std::size_t n = g.x.size();
  std::size_t count = 1;
  for (int j = 0; j < d; ++j) count *= n;
  double total = 0;
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t r = idx;
    double wt = 1, norm2 = 0;
    for (int j = 0; j < d; ++j) {
      const std::size_t m = r % n;
      r /= n;
      const double v = g.x[m];
      wt *= g.w[m] * (1 - v);
      const double z = static_cast<double>(k[j]) + sigma[j] * v;
      norm2 += z * z;
    }
    total += wt * std::pow(norm2, -s / 2);
  }
  return total;
}

}  // namespace

double cell_pair_kernel(int d, double s, const Cell& k, int order) {
  double total = 0;
  for (int mask = 0; mask < (1 << d); ++mask) {
    int sigma[3];
    bool singular = true;
    for (int j = 0; j < d; ++j) {
      sigma[j] = (mask >> j) & 1 ? 1 : -1;
      // v_j = -k_j sigma_j must lie in [0, 1]
      const std::int64_t v = -k[j] * sigma[j];
      if (v < 0 || v > 1) singular = false;
    }
    if (!singular) {
      total += smooth_piece(d, s, k, sigma, order);
      continue;
    }
    // reflect axes with singular coordinate 1 so the singularity moves to the origin
    double a[3], b[3];
    for (int j = 0; j < d; ++j) {
      const std::int64_t v = -k[j] * sigma[j];
      if (v == 0) {
        a[j] = 1;  // weight 1 - w
        b[j] = -1;
      } else {
        a[j] = 0;  // weight 1 - (1 - w) = w
        b[j] = 1;
      }
    }
    total += singular_corner(d, s, a, b, order);
  }
  return total;
}

namespace {

EnergyResult energy_direct(const CellMeasure& mu, double s) {
  const int d = mu.dim();
  const std::size_t n = mu.size();
  if (n > 20000) throw SizeError("direct energy limited to 20000 cells");
  // autocorrelation of weights over difference vectors, folded by symmetry k ~ -k
  std::map<Cell, double> corr;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Cell k{};
      for (int a = 0; a < d; ++a) k[a] = mu.cells()[i][a] - mu.cells()[j][a];
      // canonical sign: first nonzero coordinate positive
      int a = 0;
      while (a < d && k[a] == 0) ++a;
      if (a < d && k[a] < 0)
        for (int b = 0; b < d; ++b) k[b] = -k[b];
      corr[k] += mu.weights()[i] * mu.weights()[j];
    }
  EnergyResult out;
  out.method = EnergyMethod::Direct;
  double lo = 0, hi = 0;
  for (const auto& [k, c] : corr) {
    std::int64_t far = 0;
    for (int a = 0; a < d; ++a) far = std::max<std::int64_t>(far, std::llabs(k[a]));
    const int o1 = far >= 4 ? 6 : 12, o2 = far >= 4 ? 8 : 20;
    lo += c * cell_pair_kernel(d, s, k, o1);
    hi += c * cell_pair_kernel(d, s, k, o2);
  }
  const double scale = std::pow(mu.cell_side(), -s);
  out.value = {hi * scale, std::fabs(hi - lo) * scale + 1e-13 * std::fabs(hi * scale)};
  out.kernel_terms = corr.size();
  return out;
}

EnergyResult energy_fourier(const CellMeasure& mu, double s, const QuadSpec& q, double xi_max) {
  const int d = mu.dim();
  const double gamma = riesz_gamma(d, s) * std::pow(2 * std::numbers::pi, -s);
  const double P = mu.plancherel_total();
  if (!(xi_max > 0)) xi_max = std::min(std::max(256.0, 128.0 / mu.cell_side()), d == 3 ? 256.0 : 8192.0);
  auto build = [&](double X) {
    return refine_table(mu, mu, X, q, {X}, 0, [&](const RadialTable& t) {
      const Estimate e = t.integrate([&](double r) { return std::pow(r, s - d); }, 0, X);
      return e.err <= q.tol * std::fabs(e.value);
    });
  };
  RadialTable t = build(xi_max);
  const Estimate core = t.integrate([&](double r) { return std::pow(r, s - d); }, 0, xi_max);
  const Estimate F = t.integrate(0, xi_max);
  const double tail = std::max(0.0, P - F.value + F.err) * std::pow(xi_max, s - d);
  EnergyResult out;
  out.method = EnergyMethod::Fourier;
  out.xi_max = xi_max;
  out.tail_bound = gamma * tail;
  // the tail is nonnegative: report the midpoint of [core, core + tail]
  out.value = {gamma * (core.value + tail / 2), gamma * (core.err + tail / 2)};
  return out;
}

}  // namespace

EnergyResult energy(const CellMeasure& mu, double s, EnergyMethod method, const QuadSpec& q, double xi_max) {
  if (!(s > 0) || !(s < mu.dim()))
    throw ParameterError("energy exponent must satisfy 0 < s < d (divergent kernel otherwise)");
  if (method == EnergyMethod::Direct) return energy_direct(mu, s);
  return energy_fourier(mu, s, q, xi_max);
}

}  // namespace steinhaus
