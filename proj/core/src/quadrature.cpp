#include "steinhaus/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "steinhaus/errors.hpp"

namespace steinhaus {

const double GK15::xk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
const double GK15::wk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double GK15::wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                            0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

namespace {

constexpr double kPi = std::numbers::pi;

// 15 nodes on [a, b]: (x, kronrod weight, gauss weight)
void gk_nodes(double a, double b, double* x, double* wk, double* wg) {
  const double c = (a + b) / 2, h = (b - a) / 2;
  int n = 0;
  for (int i = 0; i < 7; ++i) {
    const double gw = (i % 2 == 1) ? GK15::wg[i / 2] * h : 0.0;
    x[n] = c - h * GK15::xk[i];
    wk[n] = GK15::wk[i] * h;
    wg[n++] = gw;
    x[n] = c + h * GK15::xk[i];
    wk[n] = GK15::wk[i] * h;
    wg[n++] = gw;
  }
  x[n] = c;
  wk[n] = GK15::wk[7] * h;
  wg[n] = GK15::wg[3] * h;
}

}  // namespace

std::size_t circle_nodes(double rD, double oversample) {
  const double n = oversample * 2 * (rD + 6 * std::cbrt(rD) + 12);
  auto k = static_cast<std::size_t>(std::ceil(n / 4));
  return std::max<std::size_t>(4, k) * 4;
}

double RadialTable::integrand(const double* xi) const {
  if (orthant_) {
    double v = 1;
    for (int j = 0; j < dim_; ++j) v *= std::norm(mu_->marginal_fourier(j, xi[j]));
    return v;
  }
  if (mu_ == nu_) return std::norm(mu_->fourier(xi));
  return std::real(mu_->fourier(xi) * std::conj(nu_->fourier(xi)));
}

double RadialTable::angular(double r, double& err) {
  const double D = bandwidth_;
  const double os = q_.angular_oversample;
  double xi[3];
  if (dim_ == 1) {
    err = 0;
    xi[0] = r;
    double v = integrand(xi);
    xi[0] = -r;
    v += integrand(xi);
    evals_ += 2;
    return v;
  }
  // trapezoid on an arc of length `span` with m intervals (m even), endpoints included when closed
  auto arc = [&](double rho, double span, std::size_t m, bool closed, double z, double& e) {
    double full = 0, half = 0;
    const std::size_t last = closed ? m : m - 1;
    for (std::size_t k = 0; k <= last; ++k) {
      const double th = span * static_cast<double>(k) / static_cast<double>(m);
      xi[0] = r * rho * std::cos(th);
      xi[1] = r * rho * std::sin(th);
      xi[2] = r * z;
      const double w = (closed && (k == 0 || k == m)) ? 0.5 : 1.0;
      const double f = integrand(xi) * w;
      full += f;
      if (k % 2 == 0) half += f;
    }
    evals_ += last + 1;
    const double h = span / static_cast<double>(m);
    full *= h;
    half *= 2 * h;
    e = std::fabs(full - half);
    return full;
  };
  if (dim_ == 2) {
    const std::size_t n = circle_nodes(r * D, os);
    double e = 0, v = 0;
    if (orthant_) {
      v = 4 * arc(1.0, kPi / 2, n / 4 + (n / 4) % 2, true, 0.0, e);
      err = 4 * e;
    } else {
      v = 2 * arc(1.0, kPi, n / 2, false, 0.0, e);
      err = 2 * e;
    }
    return v;
  }
  // d = 3: z = cos(theta) in [0, 1] with Gauss-Kronrod panels, trapezoid in phi
  const int nz = static_cast<int>(std::ceil(r * D / q_.panel_phase)) + 1;
  double total = 0, gauss = 0, phi_err = 0, kg_err = 0;
  for (int p = 0; p < nz; ++p) {
    double x[15], wk[15], wg[15];
    gk_nodes(static_cast<double>(p) / nz, static_cast<double>(p + 1) / nz, x, wk, wg);
    double pk = 0, pg = 0;
    for (int i = 0; i < 15; ++i) {
      const double z = x[i], rho = std::sqrt(std::max(0.0, 1 - z * z));
      const std::size_t n = circle_nodes(r * rho * D, os);
      double e = 0, v = 0;
      if (orthant_) {
        v = 4 * arc(rho, kPi / 2, n / 4 + (n / 4) % 2, true, z, e);
        e *= 4;
      } else {
        v = arc(rho, 2 * kPi, n, false, z, e);
      }
      pk += wk[i] * v;
      pg += wg[i] * v;
      phi_err += wk[i] * e;
    }
    total += pk;
    gauss += pg;
    kg_err += std::fabs(pk - pg);
  }
  (void)gauss;
  err = 2 * (kg_err + phi_err);
  return 2 * total;
}

RadialTable::RadialTable(const CellMeasure& mu, const CellMeasure& nu, double r_max, const QuadSpec& q,
                         std::vector<double> breaks, double extra_freq)
    : mu_(&mu), nu_(&nu), dim_(mu.dim()), r_max_(r_max), q_(q) {
  if (mu.dim() != nu.dim()) throw ParameterError("measures of different dimension");
  if (dim_ > 3) throw ParameterError("quadrature supports d <= 3");
  if (!(r_max > 0) || !std::isfinite(r_max)) throw ParameterError("radius must be positive and finite");
  orthant_ = (&mu == &nu) && mu.product().has_value();
  bandwidth_ = std::max(support_diameter(mu, nu), 1e-3);
  const double width = std::min(q.panel_phase / (bandwidth_ + std::max(0.0, extra_freq)), r_max);

  breaks.push_back(r_max);
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> cuts;
  for (double b : breaks)
    if (b > 0 && b <= r_max && (cuts.empty() || b > cuts.back())) cuts.push_back(b);

  // panel edges: graded towards 0 inside the first panel, then width-limited between cuts
  std::vector<double> edges{0.0};
  const double w0 = std::min(width, cuts.front());
  for (int k = 40; k >= 1; --k) edges.push_back(std::ldexp(w0, -k));
  edges.push_back(w0);
  double at = w0;
  for (double c : cuts) {
    if (c <= at) continue;
    const auto n = static_cast<std::size_t>(std::ceil((c - at) / width));
    for (std::size_t k = 1; k < n; ++k) edges.push_back(at + (c - at) * static_cast<double>(k) / static_cast<double>(n));
    edges.push_back(c);
    at = c;
  }
  // the graded block ends at w0; make every cut below w0 an edge too
  for (double c : cuts)
    if (c < w0) edges.push_back(c);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  // budget check from the node counts alone
  double budget = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double r = edges[i + 1];
    double per = 2;
    if (dim_ == 2) per = static_cast<double>(circle_nodes(r * bandwidth_, q.angular_oversample)) / (orthant_ ? 4 : 2);
    if (dim_ == 3) {
      const double nz = std::ceil(r * bandwidth_ / q.panel_phase) + 1;
      per = 15 * nz * static_cast<double>(circle_nodes(r * bandwidth_, q.angular_oversample)) / (orthant_ ? 4 : 1);
    }
    budget += 15 * per;
  }
  if (budget > static_cast<double>(q.max_nodes))
    throw QuadratureError("quadrature node budget exceeded (" + std::to_string(static_cast<long long>(budget)) +
                              " evaluations needed)",
                          NAN);

  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double x[15], wk[15], wg[15];
    gk_nodes(edges[i], edges[i + 1], x, wk, wg);
    panels_.push_back({edges[i], edges[i + 1], nodes_.size()});
    for (int k = 0; k < 15; ++k) {
      double e = 0;
      const double a = angular(x[k], e);
      const double jac = std::pow(x[k], dim_ - 1);
      nodes_.push_back({x[k], wk[k] * jac, wg[k] * jac, a, e});
    }
  }
}

Estimate RadialTable::integrate(const std::function<double(double)>& g, double r0, double r1) const {
  if (r1 < r0) throw ParameterError("integration bounds out of order");
  auto is_edge = [&](double r) {
    if (r == 0 || r == r_max_) return true;
    for (const auto& p : panels_)
      if (p.lo == r) return true;
    return false;
  };
  if (!is_edge(r0) || !is_edge(r1)) throw ParameterError("integration bound is not a table breakpoint");
  Estimate out;
  for (const auto& p : panels_) {
    if (p.lo < r0 || p.hi > r1) continue;
    double k = 0, gs = 0, ae = 0;
    for (std::size_t i = p.first; i < p.first + 15; ++i) {
      const auto& n = nodes_[i];
      const double gv = g ? g(n.r) : 1.0;
      k += n.wk * gv * n.a;
      gs += n.wg * gv * n.a;
      ae += std::fabs(n.wk * gv) * n.a_err;
    }
    out.value += k;
    out.err += std::fabs(k - gs) + ae;
  }
  // rounding floor
  out.err += 1e-14 * std::fabs(out.value);
  return out;
}

Estimate RadialTable::integrate(double r0, double r1) const { return integrate(nullptr, r0, r1); }

RadialTable refine_table(const CellMeasure& mu, const CellMeasure& nu, double r_max, const QuadSpec& q,
                         const std::vector<double>& breaks, double extra_freq,
                         const std::function<bool(const RadialTable&)>& accept) {
  QuadSpec cur = q;
  for (int pass = 0;; ++pass) {
    RadialTable t(mu, nu, r_max, cur, breaks, extra_freq);
    if (accept(t) || pass >= q.refinements) return t;
    cur.panel_phase /= 2;
    cur.angular_oversample *= 1.5;
  }
}

std::vector<Estimate> partial_l2_profile(const CellMeasure& mu, const std::vector<double>& radii, const QuadSpec& q) {
  if (radii.empty()) return {};
  for (double r : radii)
    if (!(r > 0)) throw ParameterError("partial_l2 radius must be positive");
  const double rmax = *std::max_element(radii.begin(), radii.end());
  auto eval = [&](const RadialTable& t) {
    std::vector<Estimate> out;
    for (double r : radii) out.push_back(t.integrate(0, r));
    return out;
  };
  auto ok = [&](const RadialTable& t) {
    for (const auto& e : eval(t))
      if (e.err > q.tol * std::fabs(e.value)) return false;
    return true;
  };
  RadialTable t = refine_table(mu, mu, rmax, q, radii, 0, ok);
  auto out = eval(t);
  for (const auto& e : out)
    if (e.err > q.tol * std::fabs(e.value))
      throw QuadratureError("partial_l2 did not reach the requested tolerance", e.value);
  // cumulative sums of positive integrands: enforce reported monotonicity by construction
  return out;
}

Estimate partial_l2(const CellMeasure& mu, double T, const QuadSpec& q) { return partial_l2_profile(mu, {T}, q).front(); }

}  // namespace steinhaus
