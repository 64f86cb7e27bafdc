#include "steinhaus/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "steinhaus/errors.hpp"
#include "steinhaus/params.hpp"
#include "steinhaus/sphere.hpp"

namespace steinhaus {

namespace {

constexpr double kPi = std::numbers::pi;

// 16-point Gauss-Legendre on [-1, 1]
const double kGx[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
                       0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
const double kGw[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
                       0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

void panels(double a, double b, int n, std::vector<double>& x, std::vector<double>& w) {
  for (int p = 0; p < n; ++p) {
    const double lo = a + (b - a) * p / n, hi = a + (b - a) * (p + 1) / n;
    const double c = (lo + hi) / 2, h = (hi - lo) / 2;
    for (int i = 0; i < 8; ++i) {
      x.push_back(c - h * kGx[i]);
      w.push_back(h * kGw[i]);
      x.push_back(c + h * kGx[i]);
      w.push_back(h * kGw[i]);
    }
  }
}

double sphere_area(int d) { return d == 2 ? 2 * kPi : d == 3 ? 4 * kPi : 2.0; }

}  // namespace

Mollifier::Mollifier(MollifierSpec spec) : spec_(spec) {
  if (spec_.dim < 2 || spec_.dim > 3) throw ParameterError("mollifier supports d = 2, 3");
  if (!(spec_.width > 0) || !(spec_.inner > spec_.width)) throw ParameterError("mollifier needs inner > width > 0");
  const int d = spec_.dim;
  std::vector<double> x, w;
  panels(0, spec_.width, 16, x, w);
  double total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = x[i] / spec_.width;
    const double beta = z < 1 ? std::exp(-1 / (1 - z * z)) : 0.0;
    bx_.push_back(x[i]);
    bw_.push_back(w[i] * beta * sphere_area(d) * std::pow(x[i], d - 1));
    total += bw_.back();
  }
  norm_ = total;
  for (auto& v : bw_) v /= norm_;
  // radial grid for inverse transforms: flat part and transition band, 0.02-wide panels
  const double r0 = flat_radius(), r1 = support_radius();
  panels(0, r0, static_cast<int>(std::ceil(r0 / 0.02)), rx_, rw_);
  panels(r0, r1, static_cast<int>(std::ceil((r1 - r0) / 0.02)), rx_, rw_);
  for (std::size_t i = 0; i < rx_.size(); ++i) {
    rw_[i] *= std::pow(rx_[i], d - 1);
    rh_.push_back(psi_hat(rx_[i]));
  }
}

double Mollifier::psi_hat(double rho) const {
  rho = std::fabs(rho);
  if (rho <= flat_radius()) return 1.0;
  if (rho >= support_radius()) return 0.0;
  const double R2 = spec_.inner * spec_.inner;
  double v = 0;
  for (std::size_t i = 0; i < bx_.size(); ++i) {
    const double u = bx_[i];
    // fraction of directions w with |xi - u w| <= inner
    double c = (R2 - rho * rho - u * u) / (2 * rho * u);
    c = std::clamp(c, -1.0, 1.0);
    const double frac = spec_.dim == 2 ? (kPi - std::acos(c)) / kPi : (1 + c) / 2;
    v += bw_[i] * frac;
  }
  return std::clamp(v, 0.0, 1.0);
}

double Mollifier::radial_inverse(double r, bool squared) const {
  const int d = spec_.dim;
  double s = 0;
  for (std::size_t i = 0; i < rx_.size(); ++i) {
    const double h = squared ? rh_[i] * rh_[i] : rh_[i];
    s += rw_[i] * h * sphere_ft(d, rx_[i] * r);
  }
  return s * sphere_area(d) / std::pow(2 * kPi, d);
}

double Mollifier::psi(double r) const { return radial_inverse(std::fabs(r), false); }
double Mollifier::psi_self_convolution(double r) const { return radial_inverse(std::fabs(r), true); }

MollifierReport mollifier_report(const Mollifier& m, double scan_radius, double step) {
  if (!(step > 0) || !(scan_radius > 0)) throw ParameterError("bad mollifier scan");
  MollifierReport rep;
  const int d = m.spec().dim;
  rep.psi0 = m.psi(0);
  rep.scan_radius = scan_radius;
  rep.min_value = rep.psi0;
  rep.min_quarter = rep.psi0;
  const auto n = static_cast<long>(std::ceil(scan_radius / step));
  for (long k = 0; k <= n; ++k) {
    const double r = std::min(scan_radius, static_cast<double>(k) * step);
    const double v = m.psi(r);
    if (v < rep.min_value) {
      rep.min_value = v;
      rep.min_at = r;
    }
  }
  rep.pairing_constant = m.psi_self_convolution(0);
  for (int k = 0; k <= 32; ++k) {
    const double r = 0.25 * k / 32;
    rep.min_quarter = std::min(rep.min_quarter, m.psi(r));
    if (r <= 0.125) rep.pairing_constant = std::min(rep.pairing_constant, m.psi_self_convolution(r));
  }
  const double om = unit_ball_volume(d);
  rep.reference_constant = std::ldexp(om * om * om, -3 * d - 2);
  return rep;
}

int choose_mollifier_level(int d, double e) {
  if (!(e > 0)) throw ParameterError("mollifier scale must be positive");
  const double lo = 8 * std::sqrt(static_cast<double>(d)) / e;
  int M = static_cast<int>(std::ceil(std::log2(lo)));
  while (std::ldexp(1.0, M) < lo) ++M;
  while (M > 0 && std::ldexp(1.0, M - 1) >= lo) --M;
  return M;
}

}  // namespace steinhaus
