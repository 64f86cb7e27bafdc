#include "steinhaus/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "steinhaus/errors.hpp"

namespace steinhaus {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "indeterminate";
  }
}

GrowthProfile growth_profile(const CellMeasure& mu, const std::vector<double>& T_grid, std::optional<double> nominal_s,
                             const QuadSpec& q) {
  if (T_grid.size() < 8) throw ParameterError("growth_profile needs at least 8 radii");
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    if (!(T_grid[i] > 0)) throw ParameterError("growth_profile radii must be positive");
    if (i && !(T_grid[i] > T_grid[i - 1])) throw ParameterError("growth_profile radii must increase");
  }
  GrowthProfile g;
  const auto F = partial_l2_profile(mu, T_grid, q);
  const std::size_t n = T_grid.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    g.samples.push_back({T_grid[i], F[i]});
    if (!(F[i].value > 0)) throw QuadratureError("nonpositive F sample", F[i].value);
    const double x = std::log(T_grid[i]), y = std::log(F[i].value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double nn = static_cast<double>(n);
  g.exponent = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  const double icpt = (sy - g.exponent * sx) / nn;
  g.constant = std::exp(icpt);
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::log(F[i].value) - (icpt + g.exponent * std::log(T_grid[i]));
    ss += r * r;
  }
  g.residual = std::sqrt(ss / nn);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      g.c_estimate = std::max(g.c_estimate, std::log(F[j].value / F[i].value) / std::log(T_grid[j] / T_grid[i]));
  g.nominal_gap = nominal_s ? mu.dim() - *nominal_s : g.exponent;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = std::pow(T_grid[i], g.nominal_gap);
    g.C0_emp = std::max({g.C0_emp, F[i].value / p, p / F[i].value});
  }
  return g;
}

double delta_selector(int d, double c, double T0, int M) {
  if (d < 2) throw ParameterError("delta_selector needs d >= 2");
  const double cmax = (d - 1) / 4.0;
  if (!(c > 0) || !(c < cmax)) throw ParameterError("c must lie in (0, (d-1)/4)");
  if (M < 4) throw ParameterError("M must be at least 4");
  if (!(T0 > 0)) throw ParameterError("T0 must be positive");
  const long double p = (d - 1) / 2.0L - 2.0L * c;
  const long double coef = std::pow(4.0L, d), bound = 1.0L / M;
  auto ok = [&](long double delta) {
    return delta + coef * std::pow(delta, p) < bound && 1 / (delta * delta) > static_cast<long double>(T0);
  };
  // bisection on log2(delta)
  long double lo = -16000, hi = 0;
  if (!ok(std::exp2(lo))) throw ParameterError("no admissible delta");
  for (int it = 0; it < 200; ++it) {
    const long double mid = (lo + hi) / 2;
    (ok(std::exp2(mid)) ? lo : hi) = mid;
  }
  // round down to 40 significant bits and step down until the strict inequalities hold
  int e = 0;
  const long double m = std::frexp(std::exp2(lo), &e);
  long double mant = std::floor(std::ldexp(m, 40));
  while (mant > 0 && !ok(std::ldexp(mant, e - 40))) mant -= 1;
  if (mant <= 0) throw ParameterError("no admissible delta");
  return static_cast<double>(std::ldexp(mant, e - 40));
}

RjCheck rj_check(const CellMeasure& mu, const std::vector<double>& R, double delta, int M, const QuadSpec& q,
                 RjOptions opt) {
  if (R.empty()) throw ParameterError("empty R list");
  if (!(delta > 0 && delta < 1)) throw ParameterError("delta must lie in (0, 1)");
  if (M < 1) throw ParameterError("M must be positive");
  for (std::size_t i = 0; i < R.size(); ++i) {
    if (!(R[i] > 0) || !std::isfinite(R[i])) throw ParameterError("R values must be positive and finite");
    if (i && !(R[i] > R[i - 1])) throw ParameterError("R list must increase");
  }
  RjCheck out;
  const Dyadic d2 = Dyadic::from_double(delta).square();
  out.spacing = Verdict::Pass;
  for (std::size_t i = 0; i + 1 < R.size(); ++i)
    if (Dyadic::from_double(R[i + 1]) * d2 < Dyadic::from_double(R[i])) out.spacing = Verdict::Fail;

  const double P = mu.plancherel_total();
  const double rhs_radius = R.back() / (delta * delta);
  std::vector<double> radii;
  for (double r : R)
    if (r <= opt.max_radius) radii.push_back(r);
  const bool rhs_direct = std::isfinite(rhs_radius) && rhs_radius <= opt.max_radius;
  if (rhs_direct) radii.push_back(rhs_radius);
  if (radii.empty() || radii.back() < opt.max_radius) radii.push_back(opt.max_radius);
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  const auto Fr = partial_l2_profile(mu, radii, q);
  auto at = [&](double r) {
    const auto it = std::lower_bound(radii.begin(), radii.end(), r);
    return Fr[static_cast<std::size_t>(it - radii.begin())];
  };
  const Estimate Fmax = at(opt.max_radius);
  // bracket [lo, hi] of F(r)
  auto bracket = [&](double r) -> std::pair<double, double> {
    if (r <= opt.max_radius) {
      const Estimate e = at(r);
      return {e.lo(), std::min(P, e.hi())};
    }
    return {Fmax.lo(), P};
  };
  for (double r : R) {
    auto [lo, hi] = bracket(r);
    out.F.push_back({(lo + hi) / 2, (hi - lo) / 2});
    out.sum_lo += lo;
    out.sum_hi += hi;
  }
  const double k = 1 - 2.0 / M;
  auto [rlo, rhi] = bracket(rhs_radius);
  rlo = std::max(rlo, bracket(R.back()).first);  // monotone in the radius
  out.rhs_lo = k * rlo;
  out.rhs_hi = k * rhi;
  if (out.sum_lo > out.rhs_hi)
    out.mass = Verdict::Pass;
  else if (out.sum_hi <= out.rhs_lo)
    out.mass = Verdict::Fail;
  else
    out.mass = Verdict::Indeterminate;
  return out;
}

WitnessResult find_distance_witness(const CellMeasure& mu, const std::vector<double>& R, double delta, int M,
                                    const QuadSpec& q, LambdaMethod method, RjOptions opt) {
  const RjCheck rj = rj_check(mu, R, delta, M, q, opt);
  if (!rj.passes())
    throw ParameterError("R list does not pass rj_check (spacing " + to_string(rj.spacing) + ", mass " +
                         to_string(rj.mass) + ")");
  const double geo = std::pow(2 * std::numbers::pi, mu.dim());
  WitnessResult out;
  for (std::size_t j = 0; j < R.size(); ++j) {
    WitnessStep st;
    st.j = static_cast<int>(j) + 1;
    st.t = delta / R[j];
    st.threshold = rj.F[j].hi() / M;
    bool done = false;
    if (method != LambdaMethod::Geometric) {
      try {
        st.lambda = lambda_mass(mu, mu, st.t, q).raw;
        st.method = LambdaMethod::Fourier;
        done = true;
      } catch (const QuadratureError&) {
        if (method == LambdaMethod::Fourier) throw;
      }
    }
    if (!done) {
      const Estimate g = lambda_geometric(mu, mu, st.t);
      st.lambda = {g.value * geo, g.err * geo};
      st.method = LambdaMethod::Geometric;
    }
    st.passed = st.lambda.lo() >= st.threshold;
    out.steps.push_back(st);
    if (st.passed) {
      out.witness = st;
      out.status = Verdict::Pass;
      break;
    }
  }
  if (out.witness) {
    const IntervalSet delta_set = distance_set(mu.support());
    out.exact_membership = delta_set.contains(Dyadic::from_double(out.witness->t));
  }
  return out;
}

WitnessSearch witness_search(const CellMeasure& mu, double c, double T0, int M, int max_J, const QuadSpec& q,
                             RjOptions opt) {
  WitnessSearch s;
  s.c = c;
  s.T0 = T0;
  s.M = M;
  const double P = mu.plancherel_total();
  const Estimate F0 = partial_l2(mu, T0, q);
  s.growth_certified = F0.lo() * std::pow(T0, c) >= P;
  s.delta_M = delta_selector(mu.dim(), c, T0, M);
  // a power of two strictly below delta_M keeps every t_j = delta / R_j dyadic
  int e = 0;
  std::frexp(s.delta_M, &e);
  s.delta = std::ldexp(1.0, e - 1);
  if (s.delta >= s.delta_M) s.delta /= 2;
  double r = 1;
  while (r <= T0) r *= 2;
  const double step = 1 / (s.delta * s.delta);
  for (int J = 1; J <= max_J; ++J) {
    if (J > 1) {
      const double next = s.R.back() * step;
      if (!std::isfinite(next) || next > 1e300) break;
      s.R.push_back(next);
    } else {
      s.R.push_back(r);
    }
    s.rj = rj_check(mu, s.R, s.delta, M, q, opt);
    if (s.rj.passes()) break;
  }
  if (s.growth_certified && s.rj.passes()) s.witness = find_distance_witness(mu, s.R, s.delta, M, q, LambdaMethod::Auto, opt);
  return s;
}

bool LacunarySeq::valid() const {
  if (values.empty() || !(tau1 > 0) || !(tau1 <= tau2) || !(tau2 < 1)) return false;
  const Dyadic a = Dyadic::from_double(tau1), b = Dyadic::from_double(tau2);
  for (std::size_t j = 0; j + 1 < values.size(); ++j) {
    if (!(values[j + 1] > 0)) return false;
    const Dyadic t0 = Dyadic::from_double(values[j]), t1 = Dyadic::from_double(values[j + 1]);
    if (a * t0 > t1 || t1 > b * t0) return false;
  }
  return values.back() > 0;
}

LacunaryPlan lacunary_block_plan(double tau1, double tau2, double C0, int d, double s, int M,
                                 std::optional<double> delta, const std::optional<LacunarySeq>& seq) {
  if (!(tau1 > 0) || !(tau1 <= tau2) || !(tau2 < 1)) throw ParameterError("need 0 < tau1 <= tau2 < 1");
  if (!(C0 >= 1)) throw ParameterError("C0 must be at least 1");
  LacunaryPlan p;
  p.c = (d - 1) / 8.0;
  const double ex = p.c - d + s;
  if (!(ex > 0)) throw ParameterError("T0 = C0^{2/(c-d+s)} needs s > d - c");
  p.T0 = std::pow(C0, 2 / ex);
  p.delta = delta ? *delta : delta_selector(d, p.c, p.T0, M);
  if (!(p.delta > 0 && p.delta < 1)) throw ParameterError("delta must lie in (0, 1)");
  // smallest m with tau2^{-m} > delta^{-2}, compared in log2 with an exact tie check
  const long double l_tau = -std::log2(static_cast<long double>(tau2));
  const long double l_del = -2 * std::log2(static_cast<long double>(p.delta));
  p.m = static_cast<int>(std::floor(l_del / l_tau)) + 1;
  while (p.m > 1 && (p.m - 1) * l_tau > l_del) --p.m;
  p.J0 = static_cast<long>(std::floor(2.0 * p.m * C0 * C0)) + 1;
  if (seq) {
    if (!seq->valid()) throw ParameterError("sequence is not (tau1, tau2)-lacunary");
    if (static_cast<long>(seq->values.size()) < p.J0 * p.m)
      throw ParameterError("sequence too short for J0 m terms");
  }
  for (long j = 1; j <= p.J0; ++j) {
    const long idx = j * p.m;
    const double lt = seq ? std::log2(seq->values[static_cast<std::size_t>(idx - 1)])
                          : static_cast<double>(idx) * std::log2(tau2);
    p.log2_R.push_back(std::log2(p.delta) - lt);
  }
  p.min_log2_ratio = INFINITY;
  for (std::size_t j = 0; j + 1 < p.log2_R.size(); ++j)
    p.min_log2_ratio = std::min(p.min_log2_ratio, p.log2_R[j + 1] - p.log2_R[j]);
  const double need = static_cast<double>(p.m * l_tau);
  p.ratio_ok = need > l_del && (p.log2_R.size() < 2 || p.min_log2_ratio >= need * (1 - 1e-12));
  return p;
}

BourgainScan bourgain_block_scan(const GridSet& e, const std::vector<double>& t, double tol) {
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (!(t[j] > 0)) throw ParameterError("t values must be positive");
    if (j && !(t[j] < t[j - 1] / 2)) throw ParameterError("t list must satisfy t_{j+1} < t_j / 2");
  }
  BourgainScan out;
  for (std::size_t j = 0; j < t.size(); ++j) {
    out.values.push_back(lambda_oracle(e, e, t[j], tol));
    if (!out.first && out.values.back().lo() > 0.5) out.first = static_cast<int>(j) + 1;
  }
  return out;
}

}  // namespace steinhaus
