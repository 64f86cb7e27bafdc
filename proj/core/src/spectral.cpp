#include "steinhaus/spectral.hpp"

#include <cmath>
#include <numbers>

#include "steinhaus/bump.hpp"
#include "steinhaus/errors.hpp"

namespace steinhaus {

namespace {

// unit vectors: golden-angle spiral on the circle / Fibonacci sphere
std::vector<double> direction(int d, std::size_t k, std::size_t n) {
  const double ga = std::numbers::pi * (3 - std::sqrt(5.0));
  const double phi = ga * static_cast<double>(k);
  if (d == 1) return {k % 2 ? -1.0 : 1.0};
  if (d == 2) return {std::cos(phi), std::sin(phi)};
  const double z = 1 - (2 * static_cast<double>(k) + 1) / static_cast<double>(n);
  const double rho = std::sqrt(std::max(0.0, 1 - z * z));
  return {rho * std::cos(phi), rho * std::sin(phi), z};
}

}  // namespace

ProximityReport spectral_proximity(const CellMeasure& mu, int level, std::size_t samples, double r_min, double r_max) {
  if (samples == 0 || !(r_min > 0) || !(r_max >= r_min)) throw ParameterError("bad proximity sampling range");
  const int d = mu.dim();
  RaisedCosine phi{d};
  ProximityReport rep;
  const double scale = std::sqrt(static_cast<double>(d)) * std::ldexp(1.0, -level + 1);
  for (std::size_t k = 0; k < samples; ++k) {
    const double f = samples == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(samples - 1);
    const double r = r_min * std::pow(r_max / r_min, f);
    auto xi = direction(d, k, samples);
    for (auto& x : xi) x *= r;
    const double diff = std::abs(mu.fourier(xi) - phi.fourier(xi));
    const double ratio = diff / (scale * r);
    ++rep.samples;
    if (ratio > 1) ++rep.violations;
    if (ratio > rep.worst_ratio) {
      rep.worst_ratio = ratio;
      rep.worst_xi = xi;
    }
  }
  return rep;
}

SpectralGapReport verify_spectral_gap(const SpectralGapMeasure& m, const ParamBundle& bundle, const QuadSpec& q,
                                      std::size_t samples) {
  const CellMeasure& mu = m.measure;
  if (bundle.d != mu.dim()) throw ParameterError("bundle dimension differs from the measure");
  SpectralGapReport rep;
  rep.r_inner = bundle.delta / bundle.b;
  rep.r_outer = std::pow(bundle.a, -bundle.N);
  rep.threshold = bundle.a;
  rep.level_matches = m.level == bundle.T;
  if (rep.r_outer > rep.r_inner) {
    auto ok = [&](const RadialTable& t) {
      const Estimate g = t.integrate(rep.r_inner, rep.r_outer);
      return g.err <= q.tol * std::max(std::fabs(g.value), rep.threshold);
    };
    RadialTable t = refine_table(mu, mu, rep.r_outer, q, {rep.r_inner}, 0, ok);
    rep.gap_mass = t.integrate(rep.r_inner, rep.r_outer);
  }
  rep.pass = rep.gap_mass.hi() <= rep.threshold;
  rep.proximity = spectral_proximity(mu, m.level, samples);
  return rep;
}

}  // namespace steinhaus
