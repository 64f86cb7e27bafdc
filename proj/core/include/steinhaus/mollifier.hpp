#pragma once

#include <vector>

namespace steinhaus {

// Radial psi^ = 1_{B(0, inner)} * beta, beta(u) ~ exp(-1 / (1 - (u / width)^2)) normalised to mass 1.
// psi^ is 1 on B(0, inner - width) and vanishes outside B(0, inner + width).
struct MollifierSpec {
  int dim = 2;
  double inner = 1.5;
  double width = 0.5;
};

class Mollifier {
 public:
  explicit Mollifier(MollifierSpec spec = {});

  const MollifierSpec& spec() const { return spec_; }
  double support_radius() const { return spec_.inner + spec_.width; }
  double flat_radius() const { return spec_.inner - spec_.width; }

  double psi_hat(double rho) const;
  // psi(x) = (2 pi)^{-d} int psi^(xi) e^{i x.xi} d xi at |x| = r
  double psi(double r) const;
  // (psi * psi)(v) at |v| = r
  double psi_self_convolution(double r) const;

 private:
  double radial_inverse(double r, bool squared) const;

  MollifierSpec spec_;
  double norm_ = 1;
  std::vector<double> bx_, bw_;  // beta nodes on [0, width], weights include |S| u^{d-1} beta(u)
  std::vector<double> rx_, rw_;  // radial nodes on [0, support], weights include rho^{d-1}
  std::vector<double> rh_;       // psi^ at the radial nodes
};

struct MollifierReport {
  double psi0 = 0;               // psi(0)
  double min_quarter = 0;        // min psi on |x| <= 1/4
  double min_value = 0;          // min psi over the scan
  double min_at = 0;
  double scan_radius = 0;
  double pairing_constant = 0;   // min of psi * psi on |v| <= 1/8
  double reference_constant = 0; // 2^{-3d-2} omega_d^3
};

MollifierReport mollifier_report(const Mollifier& m, double scan_radius = 200, double step = 0.05);

// Integer M with 2^M in [8 sqrt(d) / e, 16 sqrt(d) / e].
int choose_mollifier_level(int d, double e);

}  // namespace steinhaus
