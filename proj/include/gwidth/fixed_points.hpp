#pragma once

#include "gwidth/gaussian_mc.hpp"
#include "gwidth/report.hpp"

namespace gw {

struct SolverOptions {
  double rel_tol = 1e-4;
  int max_iter = 200;
};

struct FixedPoint {
  double sigma = 0.0;
  double r = 0.0;      // argmax of omega(r) - r^2 / (2 sigma)
  double value = 0.0;  // the maximum, omega(r) - r^2 / (2 sigma)
  int iterations = 0;
  bool converged = true;
  bool capped = false;  // r reached rad(T)
};

// Default bracket [min(sigma m, inrad), min(rad, 2 sigma m)] with m the
// empirical mean norm; hint_lo/hint_hi (if > 0) shrink it.
FixedPoint solve_r(const LocalWidth& W, double sigma, const SolverOptions& opt = {}, double hint_lo = -1.0,
                   double hint_hi = -1.0);
// sup{r : omega(r) >= r^2 / sigma}, by bisection.
double solve_r_star(const LocalWidth& W, double sigma, const SolverOptions& opt = {});
double tau(const LocalWidth& W, double sigma, const SolverOptions& opt = {});

struct FixedPointReport {
  double sigma = 0.0;
  FixedPoint fp, fp2;  // at sigma and 2 sigma
  double r_star = 0.0, r_star_2 = 0.0;
  MCEstimate penalized;
  CheckReport chain;
  nlohmann::json to_json() const;
};
FixedPointReport check_chain(const LocalWidth& W, double sigma, const SolverOptions& opt = {});

}  // namespace gw
