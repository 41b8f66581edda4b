#include "cssdec/fits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>

namespace cssdec {

namespace {

// Dense Gaussian elimination with partial pivoting for the small normal
// systems used here.
std::vector<double> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
    if (std::abs(a[pivot][c]) < 1e-12)
      throw std::runtime_error("degenerate-fit: rank-deficient design matrix");
    std::swap(a[c], a[pivot]);
    std::swap(b[c], b[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      double f = a[r][c] / a[c][c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace

double HeuristicFit::logical_rate(double p) const {
  return std::pow(p, d_fit / 2.0) * std::exp(c0 + c1 * p + c2 * p * p);
}

HeuristicFit fit_heuristic(const std::vector<std::pair<double, double>>& points,
                           const std::vector<double>& weights) {
  if (points.size() < 4)
    throw std::invalid_argument("degenerate-fit: need at least 4 points, got " +
                                std::to_string(points.size()));
  if (!weights.empty() && weights.size() != points.size())
    throw std::invalid_argument("fit_heuristic: weight count mismatch");

  // ln p_L = (d_fit/2) ln p + c0 + c1 p + c2 p^2 : linear in 4 parameters.
  std::vector<std::vector<double>> rows;
  std::vector<double> ys, ws;
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto [p, pl] = points[i];
    if (p <= 0 || p >= 1) throw std::invalid_argument("fit_heuristic: p out of (0,1)");
    if (pl <= 0) throw std::invalid_argument("fit_heuristic: p_L must be positive");
    rows.push_back({std::log(p), 1.0, p, p * p});
    ys.push_back(std::log(pl));
    ws.push_back(weights.empty() ? 1.0 : weights[i]);
  }

  std::vector<std::vector<double>> ata(4, std::vector<double>(4, 0.0));
  std::vector<double> atb(4, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) ata[r][c] += ws[i] * rows[i][r] * rows[i][c];
      atb[r] += ws[i] * rows[i][r] * ys[i];
    }
  }
  auto beta = solve_linear(std::move(ata), std::move(atb));

  HeuristicFit fit;
  fit.d_fit = 2.0 * beta[0];
  fit.c0 = beta[1];
  fit.c1 = beta[2];
  fit.c2 = beta[3];
  double ss = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double pred = beta[0] * rows[i][0] + beta[1] + beta[2] * rows[i][2] + beta[3] * rows[i][3];
    ss += ws[i] * (ys[i] - pred) * (ys[i] - pred);
  }
  fit.residual_norm = std::sqrt(ss);
  return fit;
}

double pseudo_threshold(const HeuristicFit& fit, int k) {
  if (k < 1) throw std::invalid_argument("pseudo_threshold: k must be >= 1");
  auto gap = [&](double p) { return fit.logical_rate(p) - (1.0 - std::pow(1.0 - p, k)); };

  const double lo = 1e-6, hi = 0.5;
  const int grid = 4096;
  // Gaps at rounding-noise level carry no sign information; a curve equal to
  // the break-even line everywhere must not read as a crossing.
  const double zero_tol = 1e-13;
  double prev_p = 0.0, prev_g = 0.0;
  bool have_prev = false;
  double a = 0.0, b = 0.0;
  bool found = false;
  for (int i = 0; i <= grid; ++i) {
    double p = lo + (hi - lo) * static_cast<double>(i) / grid;
    double g = gap(p);
    if (std::abs(g) <= zero_tol) continue;
    if (have_prev && prev_g * g < 0.0) {
      a = prev_p;
      b = p;
      found = true;
      break;
    }
    prev_p = p;
    prev_g = g;
    have_prev = true;
  }
  if (!found) throw std::runtime_error("no-crossing: p_L never meets the break-even curve");

  double ga = gap(a);
  while (b - a > 1e-9) {
    double mid = 0.5 * (a + b);
    double gm = gap(mid);
    if (gm == 0.0) return mid;
    if (ga * gm < 0.0)
      b = mid;
    else {
      a = mid;
      ga = gm;
    }
  }
  return 0.5 * (a + b);
}

namespace {

struct CollapseObjective {
  const std::vector<CollapseCurve>* curves;

  // Inner exact least squares for the quadratic, given (p_th, nu).
  double operator()(double p_th, double nu, double coeff_out[3]) const {
    if (nu <= 0.0 || p_th <= 0.0 || p_th >= 1.0) return std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> ata(3, std::vector<double>(3, 0.0));
    std::vector<double> atb(3, 0.0);
    for (const auto& curve : *curves) {
      double scale = std::pow(curve.d, nu);
      for (auto [p, pl] : curve.points) {
        double x = scale * (p - p_th);
        double row[3] = {1.0, x, x * x};
        for (int r = 0; r < 3; ++r) {
          for (int c = 0; c < 3; ++c) ata[r][c] += row[r] * row[c];
          atb[r] += row[r] * pl;
        }
      }
    }
    std::vector<double> coeff;
    try {
      coeff = solve_linear(std::move(ata), std::move(atb));
    } catch (const std::exception&) {
      return std::numeric_limits<double>::infinity();
    }
    double ss = 0.0;
    for (const auto& curve : *curves) {
      double scale = std::pow(curve.d, nu);
      for (auto [p, pl] : curve.points) {
        double x = scale * (p - p_th);
        double pred = coeff[0] + coeff[1] * x + coeff[2] * x * x;
        ss += (pl - pred) * (pl - pred);
      }
    }
    if (coeff_out)
      for (int i = 0; i < 3; ++i) coeff_out[i] = coeff[i];
    return ss;
  }
};

struct SimplexResult {
  double x[2];
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
};

// Two-parameter Nelder-Mead with standard coefficients.
SimplexResult nelder_mead(const std::function<double(const double*)>& f, const double start[2],
                          double step, int max_iter, double tol) {
  double pts[3][2];
  double vals[3];
  for (int i = 0; i < 3; ++i) {
    pts[i][0] = start[0] + (i == 1 ? step : 0.0);
    pts[i][1] = start[1] + (i == 2 ? step : 0.0);
    vals[i] = f(pts[i]);
  }
  auto order = [&]() {
    int idx[3] = {0, 1, 2};
    std::sort(idx, idx + 3, [&](int a, int b) { return vals[a] < vals[b]; });
    double tp[3][2], tv[3];
    for (int i = 0; i < 3; ++i) {
      tp[i][0] = pts[idx[i]][0];
      tp[i][1] = pts[idx[i]][1];
      tv[i] = vals[idx[i]];
    }
    for (int i = 0; i < 3; ++i) {
      pts[i][0] = tp[i][0];
      pts[i][1] = tp[i][1];
      vals[i] = tv[i];
    }
  };

  SimplexResult res;
  for (int iter = 0; iter < max_iter; ++iter) {
    order();
    double spread = std::max(
        std::max(std::abs(pts[1][0] - pts[0][0]), std::abs(pts[2][0] - pts[0][0])),
        std::max(std::abs(pts[1][1] - pts[0][1]), std::abs(pts[2][1] - pts[0][1])));
    if (spread < tol && std::abs(vals[2] - vals[0]) < tol * (1.0 + std::abs(vals[0]))) {
      res.converged = true;
      break;
    }
    double centroid[2] = {(pts[0][0] + pts[1][0]) / 2.0, (pts[0][1] + pts[1][1]) / 2.0};
    auto blend = [&](double t, double out[2]) {
      out[0] = centroid[0] + t * (pts[2][0] - centroid[0]);
      out[1] = centroid[1] + t * (pts[2][1] - centroid[1]);
    };
    double refl[2];
    blend(-1.0, refl);
    double fr = f(refl);
    if (fr < vals[0]) {
      double exp_pt[2];
      blend(-2.0, exp_pt);
      double fe = f(exp_pt);
      if (fe < fr) {
        pts[2][0] = exp_pt[0];
        pts[2][1] = exp_pt[1];
        vals[2] = fe;
      } else {
        pts[2][0] = refl[0];
        pts[2][1] = refl[1];
        vals[2] = fr;
      }
    } else if (fr < vals[1]) {
      pts[2][0] = refl[0];
      pts[2][1] = refl[1];
      vals[2] = fr;
    } else {
      double contr[2];
      blend(fr < vals[2] ? -0.5 : 0.5, contr);
      double fc = f(contr);
      if (fc < std::min(fr, vals[2])) {
        pts[2][0] = contr[0];
        pts[2][1] = contr[1];
        vals[2] = fc;
      } else {
        for (int i = 1; i < 3; ++i) {
          pts[i][0] = pts[0][0] + 0.5 * (pts[i][0] - pts[0][0]);
          pts[i][1] = pts[0][1] + 0.5 * (pts[i][1] - pts[0][1]);
          vals[i] = f(pts[i]);
        }
      }
    }
  }
  order();
  res.x[0] = pts[0][0];
  res.x[1] = pts[0][1];
  res.value = vals[0];
  return res;
}

}  // namespace

CollapseFit fit_collapse(const std::vector<CollapseCurve>& curves) {
  std::set<double> distances;
  double p_min = 1.0, p_max = 0.0;
  for (const auto& c : curves) {
    if (c.points.size() < 4)
      throw std::invalid_argument("fit_collapse: each curve needs at least 4 points");
    distances.insert(c.d);
    for (auto [p, pl] : c.points) {
      p_min = std::min(p_min, p);
      p_max = std::max(p_max, p);
    }
  }
  if (distances.size() < 2)
    throw std::invalid_argument("fit_collapse: need at least 2 distinct distances");

  CollapseObjective objective{&curves};
  auto wrapped = [&objective](const double* x) { return objective(x[0], x[1], nullptr); };

  CollapseFit best;
  double best_value = std::numeric_limits<double>::infinity();
  const double span = std::max(p_max - p_min, 1e-3);
  for (double fracture : {0.25, 0.5, 0.75}) {
    for (double nu0 : {0.5, 0.7, 1.0, 1.4}) {
      double start[2] = {p_min + fracture * span, nu0};
      auto run = nelder_mead(wrapped, start, 0.05 * span + 0.02, 4000, 1e-10);
      if (run.value < best_value) {
        best_value = run.value;
        best.p_th = run.x[0];
        best.nu = run.x[1];
        best.converged = run.converged;
      }
    }
  }
  if (!std::isfinite(best_value))
    throw std::runtime_error("fit_collapse: optimizer found no feasible parameters");
  best.residual_norm = std::sqrt(objective(best.p_th, best.nu, best.coeff));
  return best;
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  double n = static_cast<double>(trials);
  double phat = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (phat + z2 / (2.0 * n)) / denom;
  double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace cssdec
