#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steinhaus/distance.hpp"
#include "steinhaus/lambda.hpp"
#include "steinhaus/measure.hpp"
#include "steinhaus/quadrature.hpp"

namespace steinhaus {

enum class Verdict { Pass, Fail, Indeterminate };
std::string to_string(Verdict v);

struct GrowthSample {
  double T = 0;
  Estimate F;
};

struct GrowthProfile {
  std::vector<GrowthSample> samples;
  double exponent = 0;     // least-squares slope of log F against log T
  double constant = 0;     // exp(intercept)
  double residual = 0;     // rms of the log residuals
  double c_estimate = 0;   // max over sample pairs of log(F_j / F_i) / log(T_j / T_i)
  double nominal_gap = 0;  // d - s used for C0_emp (the fitted exponent when no s is given)
  double C0_emp = 0;       // max over samples of max(F / T^{d-s}, T^{d-s} / F)
};

GrowthProfile growth_profile(const CellMeasure& mu, const std::vector<double>& T_grid,
                             std::optional<double> nominal_s = std::nullopt, const QuadSpec& q = {});

// Largest delta (40 significant bits) with delta^{-2} > T0 and delta + 4^d delta^{(d-1)/2 - 2c} < 1/M.
double delta_selector(int d, double c, double T0, int M);

struct RjCheck {
  Verdict spacing = Verdict::Indeterminate;
  Verdict mass = Verdict::Indeterminate;
  double sum_lo = 0, sum_hi = 0;  // bracket of sum_j F(R_j)
  double rhs_lo = 0, rhs_hi = 0;  // bracket of (1 - 2/M) F(delta^{-2} R_J)
  std::vector<Estimate> F;        // per R_j; radii beyond max_radius carry the bracket [F(max_radius), P]
  bool passes() const { return spacing == Verdict::Pass && mass == Verdict::Pass; }
};

struct RjOptions {
  double max_radius = 4096;  // F is computed by quadrature up to this radius and bracketed beyond
};

RjCheck rj_check(const CellMeasure& mu, const std::vector<double>& R, double delta, int M, const QuadSpec& q = {},
                 RjOptions opt = {});

enum class LambdaMethod { Fourier, Geometric, Auto };

struct WitnessStep {
  int j = 0;
  double t = 0;
  Estimate lambda;         // raw
  double threshold = 0;    // upper end of (1/M) F(R_j)
  LambdaMethod method = LambdaMethod::Fourier;
  bool passed = false;
};

struct WitnessResult {
  Verdict status = Verdict::Indeterminate;  // Pass: witness found; Indeterminate: list exhausted
  std::optional<WitnessStep> witness;
  std::vector<WitnessStep> steps;
  std::optional<bool> exact_membership;  // t_j in Delta(supp mu) by exact interval arithmetic
};

WitnessResult find_distance_witness(const CellMeasure& mu, const std::vector<double>& R, double delta, int M,
                                    const QuadSpec& q = {}, LambdaMethod method = LambdaMethod::Auto,
                                    RjOptions opt = {});

// Searches (c, T0, delta, R list) for which the witness hypotheses are certified, then runs the witness finder.
struct WitnessSearch {
  double c = 0, T0 = 0, delta_M = 0, delta = 0;
  int M = 4;
  bool growth_certified = false;  // F(T0) T0^c >= P, hence F(T1 T2) <= T1^c F(T2) for T1, T2 >= T0
  std::vector<double> R;
  RjCheck rj;
  WitnessResult witness;
};

WitnessSearch witness_search(const CellMeasure& mu, double c, double T0, int M = 4, int max_J = 8,
                             const QuadSpec& q = {}, RjOptions opt = {});

struct LacunarySeq {
  std::vector<double> values;  // decreasing, positive
  double tau1 = 0, tau2 = 0;
  // tau1 t_j <= t_{j+1} <= tau2 t_j, exact on the binary values
  bool valid() const;
};

struct LacunaryPlan {
  double c = 0, T0 = 0, delta = 0;
  int m = 0;
  long J0 = 0;
  std::vector<double> log2_R;  // log2 of R_j = delta / t_{jm}, j = 1..J0
  double min_log2_ratio = 0;   // min log2(R_{j+1} / R_j)
  bool ratio_ok = false;       // every ratio >= tau2^{-m} > delta^{-2}
};

// delta from delta_selector unless given; t_j = tau2^j when no sequence is supplied.
LacunaryPlan lacunary_block_plan(double tau1, double tau2, double C0, int d, double s, int M = 4,
                                 std::optional<double> delta = std::nullopt,
                                 const std::optional<LacunarySeq>& seq = std::nullopt);

struct BourgainScan {
  std::vector<Estimate> values;  // geometric Lambda at each t
  std::optional<int> first;      // first index (1-based) with value > 1/2 beyond error
};

BourgainScan bourgain_block_scan(const GridSet& e, const std::vector<double>& t, double tol = 1e-6);

}  // namespace steinhaus
