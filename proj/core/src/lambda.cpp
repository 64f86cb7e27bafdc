#include "steinhaus/lambda.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <unordered_map>

#include "steinhaus/energy.hpp"
#include "steinhaus/errors.hpp"
#include "steinhaus/sphere.hpp"

namespace steinhaus {

namespace {

constexpr double kPi = std::numbers::pi;

// -min sigma^ over r >= 0
double sphere_ft_negative_part(int d) { return d == 2 ? 0.4028 : d == 3 ? 0.2173 : 1.0; }

// enclosure of the part beyond the cutoff given an upper bound `rem` on its |mu^||nu^| mass
void tail_interval(int d, double t, double cut, double rem, bool same, double& lo, double& hi) {
  const double s = sphere_ft_sup_beyond(d, t * cut);
  if (same) {
    lo = -std::min(sphere_ft_negative_part(d), s) * rem;
    hi = s * rem;
  } else {
    lo = -s * rem;
    hi = s * rem;
  }
}

double cutoff_cap(int d, double D) {
  if (d == 1) return 1e6 / D;
  if (d == 2) return 3000 / D;
  return 300 / D;
}

}  // namespace

double default_lambda_cutoff(const CellMeasure& mu, const CellMeasure& nu, double t) {
  if (!(t > 0)) throw ParameterError("t must be positive");
  const double D = std::max(support_diameter(mu, nu), 1e-3);
  return std::min(1e3 / t, cutoff_cap(mu.dim(), D));
}

std::vector<LambdaValue> lambda_sweep(const CellMeasure& mu, const CellMeasure& nu, const std::vector<double>& ts,
                                      const QuadSpec& q, LambdaOptions opt) {
  if (ts.empty()) return {};
  if (mu.dim() != nu.dim()) throw ParameterError("measures of different dimension");
  const int d = mu.dim();
  std::vector<double> cuts;
  double tmax = 0;
  for (double t : ts) {
    if (!(t > 0) || !std::isfinite(t)) throw ParameterError("t must be positive");
    cuts.push_back(opt.xi_max > 0 ? opt.xi_max : default_lambda_cutoff(mu, nu, t));
    tmax = std::max(tmax, t);
  }
  const double rmax = *std::max_element(cuts.begin(), cuts.end());
  const bool same = &mu == &nu;
  const double pm = mu.plancherel_total(), pn = same ? pm : nu.plancherel_total();
  const double scale = std::sqrt(pm * pn);

  auto core = [&](const RadialTable& tab, std::size_t i) {
    const double t = ts[i];
    return tab.integrate([t, d](double r) { return sphere_ft(d, t * r); }, 0, cuts[i]);
  };
  auto ok = [&](const RadialTable& tab) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const Estimate c = core(tab, i);
      if (c.err > q.tol * std::max(std::fabs(c.value), 1e-3 * scale)) return false;
    }
    return true;
  };
  RadialTable tab = refine_table(mu, nu, rmax, q, cuts, tmax, ok);

  // Plancherel remainders beyond each cutoff
  std::vector<double> rem(ts.size());
  if (same) {
    for (std::size_t i = 0; i < ts.size(); ++i) rem[i] = std::max(0.0, pm - tab.integrate(0, cuts[i]).lo());
  } else {
    RadialTable tm(mu, rmax, q, cuts), tn(nu, rmax, q, cuts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double a = std::max(0.0, pm - tm.integrate(0, cuts[i]).lo());
      const double b = std::max(0.0, pn - tn.integrate(0, cuts[i]).lo());
      rem[i] = std::sqrt(a * b);
    }
  }

  const double geo = std::pow(2 * kPi, d);
  std::vector<LambdaValue> out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Estimate c = core(tab, i);
    double lo = 0, hi = 0;
    tail_interval(d, ts[i], cuts[i], rem[i], same, lo, hi);
    const double half = (hi - lo) / 2;
    if (half > opt.tail_tol * scale)
      throw QuadratureError("Lambda tail bound exceeds tolerance at t = " + std::to_string(ts[i]) +
                                "; increase xi_max",
                            c.value);
    LambdaValue v;
    v.t = ts[i];
    v.xi_max = cuts[i];
    v.tail = half;
    v.raw = {c.value + (hi + lo) / 2, c.err + half};
    v.geometric = {v.raw.value / geo, v.raw.err / geo};
    v.positive = v.raw.lo() > 0;
    out.push_back(v);
  }
  return out;
}

LambdaValue lambda_mass(const CellMeasure& mu, const CellMeasure& nu, double t, const QuadSpec& q, LambdaOptions opt) {
  return lambda_sweep(mu, nu, {t}, q, opt).front();
}

namespace {

struct CellHash {
  std::size_t operator()(const Cell& c) const {
    std::size_t s = 0;
    for (auto v : c) s = s * 1000003u ^ std::hash<std::int64_t>()(v);
    return s;
  }
};

// sphere average of sum_k c_k prod_j max(0, h - |k_j h + shift_j - t w_j|)
Estimate sphere_average(int d, double h, const std::vector<double>& shift,
                        const std::unordered_map<Cell, double, CellHash>& coef, double t, double tol) {
  auto overlap = [&](const double* w) {
    // only k with |k_j h + shift_j - t w_j| < h contribute: two candidates per axis
    std::int64_t base[3];
    for (int j = 0; j < d; ++j) base[j] = static_cast<std::int64_t>(std::floor((t * w[j] - shift[j]) / h));
    double s = 0;
    for (int m = 0; m < (1 << d); ++m) {
      Cell k{};
      double v = 1;
      for (int j = 0; j < d && v > 0; ++j) {
        k[j] = base[j] + ((m >> j) & 1);
        v *= std::max(0.0, h - std::fabs(static_cast<double>(k[j]) * h + shift[j] - t * w[j]));
      }
      if (v <= 0) continue;
      auto it = coef.find(k);
      if (it != coef.end()) s += it->second * v;
    }
    return s;
  };

  // 8-point Gauss-Legendre on panels
  static const double gx[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
  static const double gw[4] = {0.3626837833783620, 0.3137066662728438, 0.2223810344533745, 0.1012285362903763};
  auto rule = [&](double a, double b, int m, std::vector<double>& x, std::vector<double>& w) {
    x.clear();
    w.clear();
    for (int p = 0; p < m; ++p) {
      const double lo = a + (b - a) * p / m, hi = a + (b - a) * (p + 1) / m;
      const double c = (lo + hi) / 2, hw = (hi - lo) / 2;
      for (int i = 0; i < 4; ++i) {
        x.push_back(c - hw * gx[i]);
        w.push_back(hw * gw[i]);
        x.push_back(c + hw * gx[i]);
        w.push_back(hw * gw[i]);
      }
    }
  };
  auto evaluate = [&](int m) {
    std::vector<double> px, pw, zx, zw;
    double s = 0;
    if (d == 2) {
      rule(0, 2 * kPi, m, px, pw);
      for (std::size_t i = 0; i < px.size(); ++i) {
        const double w[2] = {std::cos(px[i]), std::sin(px[i])};
        s += pw[i] * overlap(w);
      }
      return s / (2 * kPi);
    }
    // d = 3: z = cos(theta) uniform, phi in [0, 2 pi)
    rule(-1, 1, m, zx, zw);
    rule(0, 2 * kPi, m, px, pw);
    std::vector<double> cp(px.size()), sp(px.size());
    for (std::size_t i = 0; i < px.size(); ++i) {
      cp[i] = std::cos(px[i]);
      sp[i] = std::sin(px[i]);
    }
    for (std::size_t a = 0; a < zx.size(); ++a) {
      const double z = zx[a], r = std::sqrt(std::max(0.0, 1 - z * z));
      double row = 0;
      for (std::size_t b = 0; b < px.size(); ++b) {
        const double w[3] = {r * cp[b], r * sp[b], z};
        row += pw[b] * overlap(w);
      }
      s += zw[a] * row;
    }
    return s / (4 * kPi);
  };
  const int m_max = d == 2 ? (1 << 16) : 1024;
  double prev = evaluate(8);
  for (int m = 16;; m *= 2) {
    const double cur = evaluate(m);
    const double err = std::fabs(cur - prev);
    if (err < tol || m >= m_max) return {cur, err};
    prev = cur;
  }
}

}  // namespace

Estimate lambda_oracle(const GridSet& e0, const GridSet& f0, double t, double tol) {
  if (!(t > 0)) throw ParameterError("t must be positive");
  if (e0.dim() != f0.dim()) throw ParameterError("sets of different dimension");
  if (e0.scale() != f0.scale()) throw ParameterError("lambda_oracle needs equal placement scales");
  if (e0.empty() || f0.empty()) throw ParameterError("lambda_oracle needs nonempty sets");
  const int d = e0.dim();
  if (d < 2) throw ParameterError("lambda_oracle supports d = 2, 3");
  const int res = std::max(e0.resolution(), f0.resolution());
  const GridSet e = e0.refined(res), f = f0.refined(res);
  if (static_cast<double>(e.size()) * static_cast<double>(f.size()) > 4e8)
    throw SizeError("lambda_oracle: too many cell pairs");
  const double h = std::ldexp(e.scale().to_double(), -res);
  std::vector<double> shift(d, 0.0);
  for (int j = 0; j < d; ++j) {
    const double ae = e.anchor().empty() ? 0.0 : e.anchor()[j].to_double();
    const double af = f.anchor().empty() ? 0.0 : f.anchor()[j].to_double();
    shift[j] = af - ae;
  }
  // multiplicities of k = c_f - c_e over vol E vol F
  const double norm = static_cast<double>(e.size()) * static_cast<double>(f.size()) * std::pow(h, 2 * d);
  std::unordered_map<Cell, double, CellHash> coef;
  for (const auto& a : e.cells())
    for (const auto& b : f.cells()) {
      Cell k{};
      for (int j = 0; j < d; ++j) k[j] = b[j] - a[j];
      coef[k] += 1 / norm;
    }
  return sphere_average(d, h, shift, coef, t, tol);
}

Estimate lambda_geometric(const CellMeasure& mu, const CellMeasure& nu, double t, double tol) {
  if (!(t > 0)) throw ParameterError("t must be positive");
  if (mu.dim() != nu.dim()) throw ParameterError("measures of different dimension");
  if (mu.dim() < 2) throw ParameterError("lambda_geometric supports d = 2, 3");
  if (mu.cell_side() != nu.cell_side()) throw ParameterError("lambda_geometric needs equal cell sides");
  if (static_cast<double>(mu.size()) * static_cast<double>(nu.size()) > 4e8)
    throw SizeError("lambda_geometric: too many cell pairs");
  const int d = mu.dim();
  const double h = mu.cell_side();
  std::vector<double> shift(d);
  for (int j = 0; j < d; ++j) shift[j] = nu.origin()[j] - mu.origin()[j];
  const double h2d = std::pow(h, 2 * d);
  std::unordered_map<Cell, double, CellHash> coef;
  for (std::size_t a = 0; a < mu.size(); ++a)
    for (std::size_t b = 0; b < nu.size(); ++b) {
      Cell k{};
      for (int j = 0; j < d; ++j) k[j] = nu.cells()[b][j] - mu.cells()[a][j];
      coef[k] += mu.weights()[a] * nu.weights()[b] / h2d;
    }
  return sphere_average(d, h, shift, coef, t, tol);
}

LambdaReport lambda_decomposition(const CellMeasure& mu, double t, const ParamBundle& bundle, const QuadSpec& q) {
  if (!bundle.feasible()) throw ParameterError("bundle infeasible: " + bundle.first_violation());
  if (bundle.d != mu.dim()) throw ParameterError("bundle dimension differs from the measure");
  if (!(t >= bundle.a && t <= bundle.b)) throw ParameterError("t outside [a, b]");
  const int d = mu.dim();
  LambdaReport rep;
  rep.t = t;
  rep.c_d = bundle.c_d;
  rep.r1 = bundle.delta / t;
  rep.r2 = std::pow(t, -bundle.N);
  rep.r3 = std::pow(bundle.a, -bundle.N);
  const double rb = bundle.delta / bundle.b;
  auto sig = [t, d](double r) { return sphere_ft(d, t * r); };

  auto ok = [&](const RadialTable& tab) {
    const Estimate all = tab.integrate(sig, 0, tab.r_max());
    return all.err <= q.tol * std::max(std::fabs(all.value), rep.c_d);
  };
  RadialTable tab = refine_table(mu, mu, rep.r3, q, {rb, rep.r1, rep.r2}, t, ok);
  const Estimate F1 = tab.integrate(0, rep.r1);
  rep.F_r1 = F1.value;
  rep.I1 = tab.integrate(sig, 0, rep.r1);
  rep.I2 = tab.integrate(sig, rep.r1, rep.r2);
  const Estimate I3core = tab.integrate(sig, rep.r2, rep.r3);
  const double rem = std::max(0.0, mu.plancherel_total() - tab.integrate(0, rep.r3).lo());
  double lo = 0, hi = 0;
  tail_interval(d, t, rep.r3, rem, true, lo, hi);
  rep.I3 = {I3core.value + (hi + lo) / 2, I3core.err + (hi - lo) / 2};
  rep.total = {rep.I1.value + rep.I2.value + rep.I3.value, rep.I1.err + rep.I2.err + rep.I3.err};
  const Estimate gap = tab.integrate(rb, rep.r3);
  rep.gap_mass = gap.value;

  const double s = (d + 1) / 2.0 + bundle.alpha;
  const EnergyResult en = energy(mu, s, EnergyMethod::Direct, q);
  rep.energy = en.value.value;
  rep.i3_bound = sphere_decay_constant(d) * std::pow(t, bundle.N * bundle.alpha - (d - 1) / 2.0) *
                 std::pow(2 * kPi, s) * en.value.hi() / riesz_gamma(d, s);

  for (int k = 0; k <= 200; ++k) {
    const double r = rep.r1 * k / 200;
    rep.sigma_worst = std::max(rep.sigma_worst, std::fabs(1 - sphere_ft(d, t * r)));
  }
  rep.i1_lower = (1 - bundle.delta) * rep.F_r1;
  rep.i1_ok = rep.I1.value >= rep.i1_lower - (rep.I1.err + F1.err);
  rep.i2_ok = std::fabs(rep.I2.value) <= rep.gap_mass + gap.err + rep.I2.err;
  rep.i3_ok = std::fabs(rep.I3.value) <= rep.i3_bound + rep.I3.err;
  rep.sigma_ok = rep.sigma_worst <= bundle.delta;
  rep.chain_holds = gap.hi() <= bundle.a && rep.i1_ok && rep.i2_ok && rep.i3_ok && rep.sigma_ok;
  rep.total_ge_cd = rep.total.lo() >= rep.c_d;
  return rep;
}

MollifiedLambda mollified_lambda(const CellMeasure& mu, const CellMeasure& nu, double t, double delta,
                                 const Mollifier& psi, const QuadSpec& q) {
  if (!(t > 0) || !(delta > 0)) throw ParameterError("t and delta must be positive");
  if (psi.spec().dim != mu.dim()) throw ParameterError("mollifier dimension differs from the measure");
  const int d = mu.dim();
  MollifiedLambda out;
  out.t = t;
  out.e = t / delta;
  out.threshold = 4 * lambda_floor_constant(d);
  const double R = psi.support_radius() / out.e;
  const double e = out.e;
  auto g = [&](double r) {
    const double p = psi.psi_hat(e * r);
    return sphere_ft(d, t * r) * p * p;
  };
  auto ok = [&](const RadialTable& tab) {
    const Estimate v = tab.integrate(g, 0, R);
    return v.err <= q.tol * std::max(std::fabs(v.value), out.threshold);
  };
  RadialTable tab = refine_table(mu, nu, R, q, {psi.flat_radius() / e}, t + e, ok);
  out.raw = tab.integrate(g, 0, R);
  const double geo = std::pow(2 * kPi, d);
  out.geometric = {out.raw.value / geo, out.raw.err / geo};
  out.above = out.raw.lo() >= out.threshold;
  return out;
}

Estimate mollified_pairing(const CellMeasure& mu, const CellMeasure& nu, double e, const Mollifier& psi,
                           const QuadSpec& q) {
  if (!(e > 0)) throw ParameterError("mollifier scale must be positive");
  if (psi.spec().dim != mu.dim()) throw ParameterError("mollifier dimension differs from the measure");
  const double R = psi.support_radius() / e;
  auto g = [&](double r) {
    const double p = psi.psi_hat(e * r);
    return p * p;
  };
  auto ok = [&](const RadialTable& tab) {
    const Estimate v = tab.integrate(g, 0, R);
    return v.err <= q.tol * std::fabs(v.value);
  };
  RadialTable tab = refine_table(mu, nu, R, q, {psi.flat_radius() / e}, e, ok);
  const Estimate v = tab.integrate(g, 0, R);
  const double geo = std::pow(2 * kPi, mu.dim());
  return {v.value / geo, v.err / geo};
}

}  // namespace steinhaus
