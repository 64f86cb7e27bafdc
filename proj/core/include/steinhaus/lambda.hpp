#pragma once

#include <vector>

#include "steinhaus/measure.hpp"
#include "steinhaus/mollifier.hpp"
#include "steinhaus/params.hpp"
#include "steinhaus/quadrature.hpp"

namespace steinhaus {

// Lambda(t) = int Re(mu^ conj nu^)(xi) sigma^(t xi) d xi ("raw"); geometric = raw / (2 pi)^d.
struct LambdaValue {
  double t = 0;
  Estimate raw;
  Estimate geometric;
  double xi_max = 0;
  double tail = 0;        // half-width contributed by the part beyond xi_max (raw)
  bool positive = false;  // raw.lo() > 0
};

struct LambdaOptions {
  double xi_max = 0;      // 0: min(1e3 / t, budget cap)
  double tail_tol = 0.25; // tail half-width allowed, relative to sqrt(P_mu P_nu)
};

LambdaValue lambda_mass(const CellMeasure& mu, const CellMeasure& nu, double t, const QuadSpec& q = {},
                        LambdaOptions opt = {});
// One shared table for several t.
std::vector<LambdaValue> lambda_sweep(const CellMeasure& mu, const CellMeasure& nu, const std::vector<double>& ts,
                                      const QuadSpec& q = {}, LambdaOptions opt = {});

// Default truncation radius for lambda_mass.
double default_lambda_cutoff(const CellMeasure& mu, const CellMeasure& nu, double t);

// Geometric Lambda for uniform measures on E and F: sphere average of vol(E cap (F - t w)) / (vol E vol F),
// box overlaps exact, angular rule refined until successive values differ by < tol.
Estimate lambda_oracle(const GridSet& e, const GridSet& f, double t, double tol = 1e-6);

// Same sphere average for piecewise-uniform measures: sum over cell pairs of w_a w_b overlap / h^{2d}.
Estimate lambda_geometric(const CellMeasure& mu, const CellMeasure& nu, double t, double tol = 1e-6);

struct LambdaReport {
  double t = 0;
  double r1 = 0, r2 = 0, r3 = 0;  // delta / t, t^{-N}, a^{-N}
  Estimate total, I1, I2, I3;     // raw
  double F_r1 = 0;                // F(delta / t)
  double i1_lower = 0;            // (1 - delta) F(delta / t)
  double gap_mass = 0;            // F(a^{-N}) - F(delta / b)
  double i3_bound = 0;            // t^{N alpha - (d-1)/2} (2 pi)^s I_s / gamma(d, s)
  double energy = 0;              // I_s, s = (d + 1)/2 + alpha, direct method
  double sigma_worst = 0;         // max |1 - sigma^(t r)| over domain-1 samples
  double c_d = 0;
  bool i1_ok = false, i2_ok = false, i3_ok = false, sigma_ok = false;
  bool chain_holds = false;       // gap_mass <= a and the three checks
  bool total_ge_cd = false;
};

LambdaReport lambda_decomposition(const CellMeasure& mu, double t, const ParamBundle& bundle, const QuadSpec& q = {});

struct MollifiedLambda {
  double t = 0, e = 0;
  Estimate raw;
  Estimate geometric;
  double threshold = 0;  // 4 c_d
  bool above = false;
};

// int Re(mu^ conj nu^) sigma^(t xi) psi^(e xi)^2 d xi with e = t / delta; exact support |xi| <= support / e.
MollifiedLambda mollified_lambda(const CellMeasure& mu, const CellMeasure& nu, double t, double delta,
                                 const Mollifier& psi, const QuadSpec& q = {});

// <mu * psi_e, nu * psi_e> = (2 pi)^{-d} int Re(mu^ conj nu^) psi^(e xi)^2 d xi.
Estimate mollified_pairing(const CellMeasure& mu, const CellMeasure& nu, double e, const Mollifier& psi,
                           const QuadSpec& q = {});

}  // namespace steinhaus
