#include "steinhaus/params.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>

#include "steinhaus/errors.hpp"

namespace steinhaus {

double unit_ball_volume(int d) { return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1); }

double lambda_floor_constant(int d) {
  return unit_ball_volume(d) / (std::ldexp(1.0, d + 4) * std::pow(static_cast<double>(d), d / 2.0));
}

double content_margin_below(int d, int T, double e) {
  return std::ldexp(std::exp2(e * T), -d * T - 1) - std::ldexp(1.0, -d * T - 3) - std::expm1(e * T * std::numbers::ln2);
}

double content_margin(int d, int T, double s) { return content_margin_below(d, T, d - s); }

bool ParamBundle::feasible() const {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return !checks.empty();
}

std::string ParamBundle::first_violation() const {
  for (const auto& c : checks)
    if (!c.ok) return c.name + ": " + c.detail;
  return {};
}

namespace {

std::string num(double x) {
  std::ostringstream o;
  o.precision(17);
  o << x;
  return o.str();
}

// f(s) > 0 on a fine grid of [d - eps, d]; content_margin is increasing near d for T >= 1
bool margin_holds(int d, int T, double eps) {
  for (int k = 0; k <= 256; ++k)
    if (!(content_margin_below(d, T, eps * k / 256.0) > 0)) return false;
  return true;
}

}  // namespace

ParamBundle compute_parameters(int d, double kappa, double rho, int N, double alpha, double C0) {
  if (d < 2) throw ParameterError("d must be >= 2");
  if (N < 1) throw ParameterError("N must be >= 1");
  if (!(kappa > 0 && kappa < 1)) throw ParameterError("kappa must lie in (0, 1)");
  if (!(rho > 0 && rho < 1)) throw ParameterError("rho must lie in (0, 1)");
  if (!(alpha > 0)) throw ParameterError("alpha must be positive");
  ParamBundle p;
  p.d = d;
  p.N = N;
  p.kappa = kappa;
  p.rho = rho;
  p.alpha = alpha;
  p.C0 = C0;
  p.c_d = lambda_floor_constant(d);
  // largest m / 2^32 strictly below 1 / K
  const std::uint64_t K = static_cast<std::uint64_t>(d) * (static_cast<std::uint64_t>(N) * (d + 1) + 1);
  const std::uint64_t m = ((std::uint64_t{1} << 32) - 1) / K;
  p.c0 = std::ldexp(static_cast<double>(m), -32);
  const double lg = -std::log2(rho);
  p.T = static_cast<int>(std::floor((lg - 3) / d));
  // guard against log2 rounding at exact powers of two
  while (p.T >= 0 && !(rho <= std::ldexp(1.0, -d * p.T - 3))) --p.T;
  while (rho <= std::ldexp(1.0, -d * (p.T + 1) - 3)) ++p.T;
  p.a = std::pow(rho, p.c0);
  p.delta = std::pow(p.a, kappa / 2);
  p.b = std::pow(p.a, kappa);
  p.eps = p.c0 * rho / std::log(1 / rho);
  if (p.T >= 1) {
    double lo = 0, hi = 1;
    for (int it = 0; it < 200; ++it) {
      const double mid = (lo + hi) / 2;
      if (margin_holds(d, p.T, mid))
        lo = mid;
      else
        hi = mid;
    }
    p.eps_max = lo;
  }

  auto add = [&](const std::string& name, bool ok, const std::string& detail) { p.checks.push_back({name, ok, detail}); };
  add("T >= 1", p.T >= 1, "T = " + std::to_string(p.T));
  add("c0 [N(d+1)+1] < 1/d", p.c0 * static_cast<double>(K) < 1.0, "c0 = " + num(p.c0));
  add("2^{-d(T+1)-3} < rho <= 2^{-dT-3}",
      std::ldexp(1.0, -d * (p.T + 1) - 3) < rho && rho <= std::ldexp(1.0, -d * p.T - 3), "T = " + std::to_string(p.T));
  add("content margin on [d - eps, d]", p.T >= 1 && margin_holds(d, p.T, p.eps),
      "eps = " + num(p.eps) + ", eps_max = " + num(p.eps_max));
  add("N alpha > (d-1)/2", N * alpha > (d - 1) / 2.0, num(N * alpha) + " vs " + num((d - 1) / 2.0));
  add("2b <= delta", 2 * p.b <= p.delta, "2b = " + num(2 * p.b) + ", delta = " + num(p.delta));
  add("a < b", p.a < p.b, "a = " + num(p.a) + ", b = " + num(p.b));

  p.advisory.push_back({"b <= c_d", p.b <= p.c_d, "b = " + num(p.b) + ", c_d = " + num(p.c_d)});
  const double tail = C0 * std::pow(p.b, N * alpha - (d - 1) / 2.0);
  p.advisory.push_back({"C0 b^{N alpha - (d-1)/2} < c_d", tail < p.c_d, num(tail) + " vs " + num(p.c_d)});
  return p;
}

ParamBundle select_parameters(int d, double kappa, double rho, int N, double alpha, double C0) {
  ParamBundle p = compute_parameters(d, kappa, rho, N, alpha, C0);
  if (!p.feasible()) throw ParameterError("infeasible parameters, violated " + p.first_violation());
  return p;
}

}  // namespace steinhaus
