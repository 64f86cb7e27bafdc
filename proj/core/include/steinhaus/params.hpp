#pragma once

#include <string>
#include <vector>

namespace steinhaus {

double unit_ball_volume(int d);
// c_d = omega_d / (2^{d+4} d^{d/2})
double lambda_floor_constant(int d);

struct ParamCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct ParamBundle {
  int d = 2;
  int N = 1;
  double kappa = 0.5;
  double rho = 0;
  double alpha = 0;
  double c0 = 0;
  double C0 = 1;
  int T = 0;
  double a = 0, b = 0, delta = 0;
  double eps = 0;      // c0 rho / log(1/rho)
  double eps_max = 0;  // largest eps meeting the content inequality on [d - eps, d]
  double c_d = 0;
  std::vector<ParamCheck> checks;    // the bundle invariants
  std::vector<ParamCheck> advisory;  // further conditions reported but not enforced

  bool feasible() const;
  std::string first_violation() const;
};

// Computes every derived constant and records each invariant without throwing.
ParamBundle compute_parameters(int d, double kappa, double rho, int N, double alpha, double C0 = 1.0);
// As above; throws ParameterError naming the first violated invariant.
ParamBundle select_parameters(int d, double kappa, double rho, int N, double alpha, double C0 = 1.0);

// 1 - 2^{-dT-3} - 2^{(d-s)T} + 2^{-sT-1}, evaluated without cancellation.
double content_margin(int d, int T, double s);
// Same quantity at s = d - e, accurate for tiny e.
double content_margin_below(int d, int T, double e);

}  // namespace steinhaus
