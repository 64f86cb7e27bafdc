#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "steinhaus/measure.hpp"

namespace steinhaus {

struct QuadSpec {
  double tol = 1e-4;                      // relative tolerance on reported values
  std::size_t max_nodes = 400'000'000;    // integrand evaluations per table
  double panel_phase = 4.0;               // radial panel width times bandwidth
  double angular_oversample = 1.0;        // multiplies angular node counts
  int refinements = 2;                    // extra passes with halved panels when tol is missed
};

struct Estimate {
  double value = 0;
  double err = 0;
  double lo() const { return value - err; }
  double hi() const { return value + err; }
};

// Gauss-Kronrod 7-15 rule on [a, b].
struct GK15 {
  static const double xk[8];
  static const double wk[8];
  static const double wg[4];
};

// Radial samples of A(r) = integral over |omega| = 1 of Re(mu^ conj(nu^))(r omega) d omega,
// on Gauss-Kronrod panels aligned with the given breakpoints.
class RadialTable {
 public:
  RadialTable(const CellMeasure& mu, const CellMeasure& nu, double r_max, const QuadSpec& q,
              std::vector<double> breaks = {}, double extra_freq = 0);
  RadialTable(const CellMeasure& mu, double r_max, const QuadSpec& q, std::vector<double> breaks = {},
              double extra_freq = 0)
      : RadialTable(mu, mu, r_max, q, std::move(breaks), extra_freq) {}

  int dim() const { return dim_; }
  double r_max() const { return r_max_; }
  std::size_t evaluations() const { return evals_; }
  double bandwidth() const { return bandwidth_; }

  // integral over r0 <= |xi| <= r1 of Re(mu^ conj nu^)(xi) g(|xi|) d xi; r0, r1 must be breakpoints
  Estimate integrate(const std::function<double(double)>& g, double r0, double r1) const;
  Estimate integrate(double r0, double r1) const;

  struct Node {
    double r, wk, wg, a, a_err;
  };
  struct Panel {
    double lo, hi;
    std::size_t first;  // 15 nodes
  };
  const std::vector<Panel>& panels() const { return panels_; }
  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  double angular(double r, double& err);
  double integrand(const double* xi) const;

  const CellMeasure* mu_;
  const CellMeasure* nu_;
  int dim_;
  bool orthant_;
  double r_max_, bandwidth_;
  QuadSpec q_;
  std::size_t evals_ = 0;
  std::vector<Panel> panels_;
  std::vector<Node> nodes_;
};

// F_mu(T): integral of |mu^|^2 over |xi| <= T.
Estimate partial_l2(const CellMeasure& mu, double T, const QuadSpec& q = {});
std::vector<Estimate> partial_l2_profile(const CellMeasure& mu, const std::vector<double>& radii, const QuadSpec& q = {});

// Builds a table, refining panels and angular density until `accept` holds or refinements run out.
RadialTable refine_table(const CellMeasure& mu, const CellMeasure& nu, double r_max, const QuadSpec& q,
                         const std::vector<double>& breaks, double extra_freq,
                         const std::function<bool(const RadialTable&)>& accept);

// Angular node count for a full circle of radius r against bandwidth D.
std::size_t circle_nodes(double rD, double oversample);

}  // namespace steinhaus
