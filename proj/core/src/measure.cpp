#include "steinhaus/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "steinhaus/errors.hpp"
#include "steinhaus/params.hpp"

namespace steinhaus {

std::complex<double> box_transform(double u) {
  if (std::fabs(u) < 1e-5) return {1 - u * u / 6, -u / 2 + u * u * u / 24};
  const double s = std::sin(u / 2);
  // (1 - e^{-iu}) / (iu) = (sin u + i (cos u - 1)) / u
  return {std::sin(u) / u, -2 * s * s / u};
}

std::complex<double> lattice_phase_sum(const std::vector<std::int64_t>& coords, const std::vector<double>& w,
                                       double hx) {
  if (coords.empty()) return 0;
  std::complex<double> z = std::polar(1.0, -static_cast<double>(coords[0]) * hx);
  std::complex<double> sum = w[0] * z;
  std::int64_t gaps[8];
  std::complex<double> steps[8];
  int cached = 0;
  for (std::size_t k = 1; k < coords.size(); ++k) {
    const std::int64_t g = coords[k] - coords[k - 1];
    int idx = -1;
    for (int j = 0; j < cached; ++j)
      if (gaps[j] == g) {
        idx = j;
        break;
      }
    if (idx < 0) {
      if (cached == 8) {
        z = std::polar(1.0, -static_cast<double>(coords[k]) * hx);
        sum += w[k] * z;
        continue;
      }
      gaps[cached] = g;
      steps[cached] = std::polar(1.0, -static_cast<double>(g) * hx);
      idx = cached++;
    }
    z *= steps[idx];
    sum += w[k] * z;
  }
  return sum;
}

CellMeasure::CellMeasure(int dim, int resolution, std::vector<Cell> cells, std::vector<double> weights,
                         std::vector<double> origin, double scale)
    : dim_(dim), res_(resolution), scale_(scale), origin_(std::move(origin)), cells_(std::move(cells)),
      weights_(std::move(weights)) {
  if (dim < 1 || dim > kMaxDim) throw ParameterError("measure dimension must be 1..3");
  if (cells_.size() != weights_.size()) throw ParameterError("cells and weights differ in length");
  if (!(scale > 0)) throw ParameterError("measure scale must be positive");
  for (double w : weights_)
    if (!(w >= 0) || !std::isfinite(w)) throw ParameterError("measure weights must be finite and nonnegative");
  if (origin_.empty()) origin_.assign(dim, 0.0);
  if (static_cast<int>(origin_.size()) != dim) throw ParameterError("origin dimension mismatch");
  h_ = std::ldexp(scale, -resolution);
  // sort cells for reproducible summation order
  std::vector<std::size_t> order(cells_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cell_less(cells_[a], cells_[b], dim_); });
  std::vector<Cell> c2;
  std::vector<double> w2;
  for (auto i : order) {
    c2.push_back(cells_[i]);
    w2.push_back(weights_[i]);
  }
  cells_ = std::move(c2);
  weights_ = std::move(w2);
  index_axes();
  detect_product();
}

void CellMeasure::set_exact_weights(std::vector<mpq_class> w) {
  if (w.size() != cells_.size()) throw ParameterError("exact weights length mismatch");
  exact_ = std::move(w);
}

CellMeasure CellMeasure::uniform(const GridSet& e) {
  if (e.empty()) throw ParameterError("uniform measure on an empty set");
  const double w = 1.0 / static_cast<double>(e.size());
  std::vector<double> origin;
  for (const auto& a : e.anchor()) origin.push_back(a.to_double());
  CellMeasure m(e.dim(), e.resolution(), e.cells(), std::vector<double>(e.size(), w), origin, e.scale().to_double());
  m.set_exact_weights(std::vector<mpq_class>(e.size(), mpq_class(1, e.size())));
  return m;
}

void CellMeasure::index_axes() {
  axis_coords_.assign(dim_, {});
  axis_index_.assign(dim_, std::vector<std::uint32_t>(cells_.size()));
  for (int j = 0; j < dim_; ++j) {
    auto& v = axis_coords_[j];
    for (const auto& c : cells_) v.push_back(c[j]);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    for (std::size_t i = 0; i < cells_.size(); ++i)
      axis_index_[j][i] = static_cast<std::uint32_t>(std::lower_bound(v.begin(), v.end(), cells_[i][j]) - v.begin());
  }
}

void CellMeasure::detect_product() {
  product_.reset();
  if (cells_.empty()) return;
  std::size_t full = 1;
  for (int j = 0; j < dim_; ++j) full *= axis_coords_[j].size();
  if (full != cells_.size()) return;
  const double total = total_mass();
  if (!(total > 0)) return;
  std::vector<AxisMarginal> marg(dim_);
  for (int j = 0; j < dim_; ++j) {
    marg[j].coords = axis_coords_[j];
    marg[j].weights.assign(axis_coords_[j].size(), 0.0);
    for (std::size_t i = 0; i < cells_.size(); ++i) marg[j].weights[axis_index_[j][i]] += weights_[i];
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    double p = 1;
    for (int j = 0; j < dim_; ++j) p *= marg[j].weights[axis_index_[j][i]] / total;
    p *= total;
    if (std::fabs(p - weights_[i]) > 1e-12 * std::max(weights_[i], p) + 1e-300) return;
  }
  for (int j = 1; j < dim_; ++j)
    for (auto& w : marg[j].weights) w /= total;
  product_ = std::move(marg);
}

double CellMeasure::total_mass() const {
  double s = 0;
  for (double w : weights_) s += w;
  return s;
}

std::complex<double> CellMeasure::marginal_fourier(int axis, double x) const {
  const auto& m = product_.value().at(axis);
  return std::polar(1.0, -origin_[axis] * x) * box_transform(h_ * x) * lattice_phase_sum(m.coords, m.weights, h_ * x);
}

std::complex<double> CellMeasure::fourier(const double* xi) const {
  if (product_) {
    std::complex<double> v = 1;
    for (int j = 0; j < dim_; ++j) v *= marginal_fourier(j, xi[j]);
    return v;
  }
  std::complex<double> pref = 1;
  std::vector<std::vector<std::complex<double>>> pw(dim_);
  for (int j = 0; j < dim_; ++j) {
    pref *= std::polar(1.0, -origin_[j] * xi[j]) * box_transform(h_ * xi[j]);
    const auto& cs = axis_coords_[j];
    pw[j].resize(cs.size());
    const double hx = h_ * xi[j];
    std::complex<double> z = std::polar(1.0, -static_cast<double>(cs[0]) * hx);
    pw[j][0] = z;
    for (std::size_t k = 1; k < cs.size(); ++k) {
      const std::int64_t g = cs[k] - cs[k - 1];
      z = (g == 1 && k % 64 != 0) ? z * std::polar(1.0, -hx) : std::polar(1.0, -static_cast<double>(cs[k]) * hx);
      pw[j][k] = z;
    }
  }
  std::complex<double> sum = 0;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    std::complex<double> t = weights_[i];
    for (int j = 0; j < dim_; ++j) t *= pw[j][axis_index_[j][i]];
    sum += t;
  }
  return pref * sum;
}

std::complex<double> CellMeasure::fourier(const std::vector<double>& xi) const {
  if (static_cast<int>(xi.size()) != dim_) throw ParameterError("frequency dimension mismatch");
  return fourier(xi.data());
}

double CellMeasure::plancherel_total() const {
  double s = 0;
  for (double w : weights_) s += w * w;
  return std::pow(2 * std::numbers::pi, dim_) * s / std::pow(h_, dim_);
}

std::pair<std::vector<double>, std::vector<double>> CellMeasure::bounding_box() const {
  std::vector<double> lo(dim_), hi(dim_);
  for (int j = 0; j < dim_; ++j) {
    lo[j] = origin_[j] + h_ * static_cast<double>(axis_coords_[j].front());
    hi[j] = origin_[j] + h_ * static_cast<double>(axis_coords_[j].back() + 1);
  }
  return {lo, hi};
}

GridSet CellMeasure::support() const {
  GridSet g(dim_, res_, cells_);
  std::vector<Dyadic> anchor;
  for (double o : origin_) anchor.push_back(Dyadic::from_double(o));
  return g.with_placement(Dyadic::from_double(scale_), anchor);
}

double CellMeasure::mass_in_cube(const DyadicCube& q) const {
  if (q.level > res_) throw ParameterError("cube finer than the measure resolution");
  const int sh = res_ - q.level;
  double s = 0;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    bool in = true;
    for (int j = 0; j < dim_ && in; ++j) in = (cells_[i][j] >> sh) == q.corner[j];
    if (in) s += weights_[i];
  }
  return s;
}

double support_diameter(const CellMeasure& mu, const CellMeasure& nu) {
  auto [a0, a1] = mu.bounding_box();
  auto [b0, b1] = nu.bounding_box();
  double s = 0;
  for (int j = 0; j < mu.dim(); ++j) {
    const double g = std::max(a1[j] - b0[j], b1[j] - a0[j]);
    s += g * g;
  }
  return std::sqrt(s);
}

SpectralGapMeasure spectral_gap_measure(const GridSet& e, int level, Rational s) {
  if (level < 0) throw ParameterError("level must be nonnegative");
  if (e.resolution() < level) throw ParameterError("set resolution below the measure level");
  if (e.scale() != Dyadic(1)) throw ParameterError("spectral_gap_measure expects an unplaced set in [0,1]^d");
  for (const auto& a : e.anchor())
    if (!a.is_zero()) throw ParameterError("spectral_gap_measure expects an unplaced set in [0,1]^d");
  const int d = e.dim();
  const int sh = e.resolution() - level;
  const long side = 1L << level;
  long n_cubes = 1;
  for (int j = 0; j < d; ++j) n_cubes *= side;
  if (n_cubes > (1L << 22)) throw SizeError("too many level-T cubes");
  RaisedCosine phi{d};
  // H(E cap Q) = l(Q)^s H(rescaled piece), so the test is 2 H(piece) >= 1
  const ContentValue unit = ContentValue::cube(s, 0);
  SpectralGapMeasure out;
  out.level = level;
  // bucket cells by their level-T ancestor
  std::vector<std::vector<std::size_t>> bucket(n_cubes);
  for (std::size_t i = 0; i < e.size(); ++i) {
    long idx = 0;
    for (int j = d - 1; j >= 0; --j) idx = idx * side + (e.cells()[i][j] >> sh);
    bucket[idx].push_back(i);
  }
  std::vector<Cell> cells;
  std::vector<double> weights;
  std::vector<mpq_class> exact;
  for (long idx = 0; idx < n_cubes; ++idx) {
    DyadicCube q{d, level, {}};
    long r = idx;
    for (int j = 0; j < d; ++j) {
      q.corner[j] = r % side;
      r /= side;
    }
    // density precondition: 2 H(E cap Q) >= l(Q)^s
    const GridSet piece = restrict(e, q);
    if (piece.empty() || compare(content(piece, s).times(2), unit) < 0) {
      std::string name = "(";
      for (int j = 0; j < d; ++j) name += (j ? "," : "") + std::to_string(q.corner[j]);
      throw ParameterError("content density below 1/2 at level-" + std::to_string(level) + " cube " + name + ")");
    }
    const double w = phi.cube_weight(q);
    const auto& b = bucket[idx];
    out.cubes.push_back({q, w, b.size()});
    const mpq_class wq(w);
    for (auto i : b) {
      cells.push_back(e.cells()[i]);
      weights.push_back(w / static_cast<double>(b.size()));
      exact.push_back(wq / static_cast<unsigned long>(b.size()));
    }
  }
  // exact weights follow the cells' sorted order inside CellMeasure
  std::vector<std::size_t> order(cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cell_less(cells[a], cells[b], d); });
  std::vector<mpq_class> exact_sorted;
  for (auto i : order) exact_sorted.push_back(exact[i]);
  out.measure = CellMeasure(d, e.resolution(), cells, weights);
  out.measure.set_exact_weights(std::move(exact_sorted));
  return out;
}

SpectralGapMeasure spectral_gap_measure(const GridSet& e, const ParamBundle& bundle, Rational s) {
  return spectral_gap_measure(e, bundle.T, s);
}

MassAudit audit_cube_masses(const SpectralGapMeasure& m) {
  MassAudit a;
  const auto& mu = m.measure;
  const int sh = mu.resolution() - m.level;
  const auto& ex = mu.exact_weights();
  for (const auto& cw : m.cubes) {
    mpq_class mass = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      bool in = true;
      for (int j = 0; j < mu.dim() && in; ++j) in = (mu.cells()[i][j] >> sh) == cw.cube.corner[j];
      if (in) mass += ex.at(i);
    }
    ++a.cubes;
    if (mass == mpq_class(cw.weight)) ++a.exact_matches;
  }
  a.weights_sum_exact = m.cubes.size() == (std::size_t{1} << (mu.dim() * m.level)) &&
                        bump_weights_sum_to_one(mu.dim(), m.level);
  a.total_mass = mu.total_mass();
  return a;
}

namespace {

// mass of a uniform box against a ball, bracketed by recursive subdivision
void ball_box(const double* c, double r2, const double* lo, double side, int dim, double mass, int depth,
              double& in, double& edge) {
  double dmin = 0, dmax = 0;
  for (int j = 0; j < dim; ++j) {
    const double a = lo[j] - c[j], b = lo[j] + side - c[j];
    const double near = (a > 0) ? a : (b < 0 ? -b : 0.0);
    const double far = std::max(std::fabs(a), std::fabs(b));
    dmin += near * near;
    dmax += far * far;
  }
  if (dmin > r2) return;
  if (dmax <= r2) {
    in += mass;
    return;
  }
  if (depth == 0) {
    edge += mass;
    return;
  }
  const double half = side / 2;
  const double sub = mass / static_cast<double>(1 << dim);
  for (int k = 0; k < (1 << dim); ++k) {
    double l2[kMaxDim];
    for (int j = 0; j < dim; ++j) l2[j] = lo[j] + ((k >> j) & 1 ? half : 0.0);
    ball_box(c, r2, l2, half, dim, sub, depth - 1, in, edge);
  }
}

}  // namespace

BallCondition ball_condition(const CellMeasure& mu, double s, BallSampleSpec spec) {
  BallCondition out;
  const int d = mu.dim();
  const int cl = spec.center_level < 0 ? mu.resolution() : spec.center_level;
  auto [lo, hi] = mu.bounding_box();
  const double step = std::ldexp(mu.scale(), -cl);
  std::vector<long> counts(d);
  long total = 1;
  for (int j = 0; j < d; ++j) {
    counts[j] = static_cast<long>(std::floor((hi[j] - lo[j]) / step + 1e-9)) + 1;
    total *= counts[j];
  }
  if (total > (1L << 22)) throw SizeError("too many ball centres");
  const double h = mu.cell_side();
  std::vector<double> cell_lo(mu.size() * d);
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (int j = 0; j < d; ++j) cell_lo[i * d + j] = mu.origin()[j] + h * static_cast<double>(mu.cells()[i][j]);
  std::vector<double> radii;
  for (int k = mu.resolution(); k >= -1; --k) radii.push_back(std::ldexp(mu.scale(), -k));
  std::vector<double> c(d);
  for (long idx = 0; idx < total; ++idx) {
    long r = idx;
    for (int j = 0; j < d; ++j) {
      c[j] = lo[j] + step * static_cast<double>(r % counts[j]);
      r /= counts[j];
    }
    for (double rad : radii) {
      double in = 0, edge = 0;
      const double r2 = rad * rad;
      for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu.weights()[i] == 0) continue;
        ball_box(c.data(), r2, &cell_lo[i * d], h, d, mu.weights()[i], spec.depth, in, edge);
      }
      const double rs = std::pow(rad, s);
      ++out.balls;
      if ((in + edge) / rs > out.a_est) {
        out.a_est = (in + edge) / rs;
        out.worst_center = c;
        out.worst_radius = rad;
      }
      out.a_lower = std::max(out.a_lower, in / rs);
    }
  }
  return out;
}

}  // namespace steinhaus
