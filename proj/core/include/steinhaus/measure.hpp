#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "steinhaus/bump.hpp"
#include "steinhaus/content.hpp"
#include "steinhaus/dyadic.hpp"

namespace steinhaus {

// One axis of a measure whose weights factor over a product cell set.
struct AxisMarginal {
  std::vector<std::int64_t> coords;  // sorted
  std::vector<double> weights;
};

// Piecewise-uniform density: cell c carries mass weights[c] spread uniformly over
// origin + h (c + [0,1]^d), h = scale * 2^{-resolution}.
class CellMeasure {
 public:
  CellMeasure() = default;
  CellMeasure(int dim, int resolution, std::vector<Cell> cells, std::vector<double> weights,
              std::vector<double> origin = {}, double scale = 1.0);

  // Normalised Lebesgue measure on a GridSet, placement included.
  static CellMeasure uniform(const GridSet& e);

  int dim() const { return dim_; }
  int resolution() const { return res_; }
  double cell_side() const { return h_; }
  double scale() const { return scale_; }
  const std::vector<double>& origin() const { return origin_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return cells_.size(); }

  // Exact rational weights when the construction provides them.
  const std::vector<mpq_class>& exact_weights() const { return exact_; }
  void set_exact_weights(std::vector<mpq_class> w);

  double total_mass() const;
  std::complex<double> fourier(const std::vector<double>& xi) const;
  std::complex<double> fourier(const double* xi) const;
  const std::optional<std::vector<AxisMarginal>>& product() const { return product_; }
  // 1D transform of a marginal, including the axis offset and the cell box factor.
  std::complex<double> marginal_fourier(int axis, double x) const;

  // (2 pi)^d sum w^2 / vol(cell) = integral of |mu^|^2 over R^d.
  double plancherel_total() const;
  // Bounding box of the support: lo, hi per axis.
  std::pair<std::vector<double>, std::vector<double>> bounding_box() const;
  GridSet support() const;
  double mass_in_cube(const DyadicCube& q) const;

 private:
  void index_axes();
  void detect_product();

  int dim_ = 2, res_ = 0;
  double scale_ = 1, h_ = 1;
  std::vector<double> origin_;
  std::vector<Cell> cells_;
  std::vector<double> weights_;
  std::vector<mpq_class> exact_;
  // per axis: distinct coordinates, and per cell the index into them
  std::vector<std::vector<std::int64_t>> axis_coords_;
  std::vector<std::vector<std::uint32_t>> axis_index_;
  std::optional<std::vector<AxisMarginal>> product_;
};

// sum_k w_k e^{-i c_k h x} for sorted integer coords, with powers reused across equal gaps.
std::complex<double> lattice_phase_sum(const std::vector<std::int64_t>& coords, const std::vector<double>& w,
                                       double hx);
// box transform (1 - e^{-i u}) / (i u), 1 at u = 0
std::complex<double> box_transform(double u);

// Largest |x - y| over x in supp mu, y in supp nu (bounding boxes).
double support_diameter(const CellMeasure& mu, const CellMeasure& nu);

struct CubeWeight {
  DyadicCube cube;
  double weight = 0;
  std::size_t cells = 0;
};

struct SpectralGapMeasure {
  CellMeasure measure;
  int level = 0;
  std::vector<CubeWeight> cubes;
};

struct ParamBundle;

// Weights w(Q) = integral of the raised cosine over each level-T cube, uniform on E cap Q.
SpectralGapMeasure spectral_gap_measure(const GridSet& e, int level, Rational s);
SpectralGapMeasure spectral_gap_measure(const GridSet& e, const ParamBundle& bundle, Rational s);

struct MassAudit {
  std::size_t cubes = 0;
  std::size_t exact_matches = 0;  // mu(Q) == w(Q) in rational arithmetic
  bool weights_sum_exact = false;
  double total_mass = 0;
};
MassAudit audit_cube_masses(const SpectralGapMeasure& m);

struct BallCondition {
  double a_est = 0;     // sup of the upper bracket of mu(B) / r^s
  double a_lower = 0;   // same sup over the lower bracket
  std::vector<double> worst_center;
  double worst_radius = 0;
  std::size_t balls = 0;
};

struct BallSampleSpec {
  int center_level = -1;  // centres on the 2^{-center_level} grid over the bounding box; -1 uses the resolution
  int depth = 6;          // boundary subdivision depth
};

BallCondition ball_condition(const CellMeasure& mu, double s, BallSampleSpec spec = {});

}  // namespace steinhaus
