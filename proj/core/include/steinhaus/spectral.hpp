#pragma once

#include <cstddef>
#include <vector>

#include "steinhaus/measure.hpp"
#include "steinhaus/params.hpp"
#include "steinhaus/quadrature.hpp"

namespace steinhaus {

// Worst ratio |mu^(xi) - phi^(xi)| / (sqrt(d) 2^{-T+1} |xi|) over deterministic samples.
struct ProximityReport {
  std::size_t samples = 0;
  std::size_t violations = 0;  // ratio > 1
  double worst_ratio = 0;
  std::vector<double> worst_xi;
};

// Samples: radii log-spaced in [r_min, r_max], directions on a golden-angle spiral.
ProximityReport spectral_proximity(const CellMeasure& mu, int level, std::size_t samples = 1000, double r_min = 1e-2,
                                   double r_max = 1e3);

struct SpectralGapReport {
  double r_inner = 0;  // delta / b
  double r_outer = 0;  // a^{-N}
  Estimate gap_mass;   // F(r_outer) - F(r_inner)
  double threshold = 0;
  bool pass = false;            // gap_mass.hi() <= threshold
  bool level_matches = false;   // measure level equals bundle.T
  ProximityReport proximity;
};

SpectralGapReport verify_spectral_gap(const SpectralGapMeasure& m, const ParamBundle& bundle, const QuadSpec& q = {},
                                      std::size_t samples = 1000);

}  // namespace steinhaus
