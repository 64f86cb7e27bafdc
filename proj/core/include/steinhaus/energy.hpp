#pragma once

#include "steinhaus/measure.hpp"
#include "steinhaus/quadrature.hpp"

namespace steinhaus {

enum class EnergyMethod { Direct, Fourier };

// pi^{s - d/2} Gamma((d - s)/2) / Gamma(s/2)
double riesz_gamma(int d, double s);

struct EnergyResult {
  Estimate value;
  EnergyMethod method = EnergyMethod::Direct;
  double xi_max = 0;      // Fourier side: truncation radius
  double tail_bound = 0;  // Fourier side: certified bound on the part beyond xi_max
  std::size_t kernel_terms = 0;
};

// I_s(mu) = double integral of |x - y|^{-s}, 0 < s < d.
EnergyResult energy(const CellMeasure& mu, double s, EnergyMethod method, const QuadSpec& q = {}, double xi_max = 0);

// Integral of |x - y|^{-s} over two cells of side 1 whose corners differ by k (integer vector).
double cell_pair_kernel(int d, double s, const Cell& k, int order = 10);

}  // namespace steinhaus
