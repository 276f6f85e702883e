#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace gw {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2Pi = 2.50662827463100050242;
inline constexpr double kInvSqrtPi = 0.56418958354775628695;

double normal_pdf(double x);
double normal_cdf(double x);
// Upper tail 1 - Phi(x), accurate for large x.
double normal_tail(double x);
// Mills ratio (1 - Phi(x)) / phi(x).
double mills_ratio(double x);
// Inverse standard normal CDF, Wichura's AS241 (PPND16), |rel err| ~ 1e-16.
double normal_quantile(double p);

double log_binom(int n, int k);
// log of the volume of the unit Euclidean ball in R^n.
double log_unit_ball_volume(int n);
// E||g|| for g ~ N(0, I_d).
double expected_gaussian_norm(int d);
double log_sum_exp(std::span<const double> v);

// Pairwise (tree) summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> v);

struct GoldenResult {
  double x;
  double f;
  int iterations;
  bool converged;
};
// Maximize a unimodal f on [lo, hi]. Stops once the bracket is below
// max(rel_tol * |x|, abs_tol); returns the midpoint of the final bracket.
GoldenResult golden_max(const std::function<double(double)>& f, double lo, double hi,
                        double rel_tol, double abs_tol, int max_iter = 200);

// Adaptive Gauss-Kronrod (15 point) on a finite interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double* err = nullptr, unsigned max_depth = 18);

}  // namespace gw
