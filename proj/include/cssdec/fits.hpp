#pragma once

#include <utility>
#include <vector>

namespace cssdec {

// p_L(p) = p^(d_fit/2) * exp(c0 + c1 p + c2 p^2), fitted in log space where
// the model is linear in its four parameters.
struct HeuristicFit {
  double d_fit = 0.0;
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
  double residual_norm = 0.0;

  double logical_rate(double p) const;
};

// Exact normal-equation solution; optional per-point weights (inverse
// variance of ln p_L). Throws `degenerate-fit` on rank deficiency or fewer
// than 4 usable points.
HeuristicFit fit_heuristic(const std::vector<std::pair<double, double>>& points,
                           const std::vector<double>& weights = {});

// Break-even crossing p_L(p) = 1 - (1-p)^k, located by bisection to 1e-9.
// Throws `no-crossing` when no sign change exists in (1e-6, 0.5).
double pseudo_threshold(const HeuristicFit& fit, int k);

struct CollapseCurve {
  double d = 0.0;
  std::vector<std::pair<double, double>> points;  // (p, p_L)
};

// Critical scaling ansatz p_L = f(d^nu (p - p_th)) with quadratic f: inner
// linear solve for f, derivative-free simplex search with multi-start over
// (p_th, nu).
struct CollapseFit {
  double p_th = 0.0;
  double nu = 0.0;
  double coeff[3] = {0, 0, 0};
  double residual_norm = 0.0;
  bool converged = false;
};

CollapseFit fit_collapse(const std::vector<CollapseCurve>& curves);

// Wilson score interval for a binomial proportion.
struct WilsonInterval {
  double low = 0.0, high = 0.0;
};
WilsonInterval wilson_interval(std::size_t successes, std::size_t trials,
                               double z = 1.959963984540054);

}  // namespace cssdec
