#pragma once

#include <functional>
#include <vector>

#include "gwidth/fixed_points.hpp"
#include "gwidth/gaussian_mc.hpp"

namespace gw {

struct QuadratureOptions {
  int nodes = 200;
  int max_doublings = 3;
  double stability = 1e-3;   // relative change tolerated when doubling nodes
  double nu0_factor = 1e-3;  // nu_0 = nu0_factor * inrad / sqrt(d)
  double upper_factor = 1e3; // V = upper_factor * rad
  bool throw_if_unstable = true;
};

// ½ ∫_sigma^∞ F(nu) / nu^2 d nu for F nondecreasing with F/nu^2 nonincreasing
// and F <= fmax. Trapezoid in log(nu) on [max(sigma, nu_0), V]; the pieces
// outside are bracketed analytically and enter through their midpoints.
struct TailIntegral {
  double value = 0.0;
  double quad_error = 0.0;  // twice the change of the result under node doubling
  double head = 0.0, head_halfwidth = 0.0;
  double tail = 0.0, tail_halfwidth = 0.0;
  double solver_error = 0.0;
  int nodes = 0;
  bool stable = true;
  std::vector<double> nu, F;
  double error() const { return quad_error + head_halfwidth + tail_halfwidth + solver_error; }
};

// F(nu, lo, hi): value at nu, with bounds lo <= F(nu) <= hi from monotonicity.
using TermFn = std::function<double(double nu, double lo, double hi)>;

struct TailTerm {
  TermFn F;
  double fmax = 0.0;        // sup F (rad^2)
  double head_limit = 0.0;  // lim_{nu -> 0} F / nu^2
  double nu0 = 0.0;
  double V = 0.0;
  double solver_rel = 0.0;  // relative error of each F evaluation
};

TailIntegral half_tail_integral(const TailTerm& term, double sigma, const QuadratureOptions& q = {});

// ½ ∫_sigma^∞ r(nu)^2 / nu^2 d nu with r from solve_r on the sample set.
TailIntegral integrate_r_term(const LocalWidth& W, double sigma, const QuadratureOptions& q = {},
                              const SolverOptions& opt = {});
// Same with a closed-form radius function.
TailIntegral integrate_r_term(const std::function<double(double)>& r_of_nu, const ConvexBody& T, double head_limit,
                              double sigma, const QuadratureOptions& q = {});
// ½ ∫_sigma^∞ E||Π_T(nu g)||^2 / nu^2 d nu.
TailIntegral integrate_proj_term(const ConvexBody& T, const GaussianSampleSet& s, double sigma,
                                 const QuadratureOptions& q = {});

struct DecompositionResult {
  std::string kind;
  double sigma = 0.0;
  MCEstimate width;
  double first = 0.0, first_se = 0.0;
  TailIntegral second;
  double residual = 0.0;   // width - first - second
  double tolerance = 0.0;  // 3 (combined se + quadrature + brackets)
  bool holds = false;
  nlohmann::json to_json() const;
};

// w = T(sigma) + ½ ∫_sigma^∞ r(nu)^2/nu^2 d nu (sigma = 0: first term 0).
DecompositionResult verify_fixed_point_decomposition(const LocalWidth& W, double sigma, const QuadratureOptions& q = {},
                                                     const SolverOptions& opt = {});
// w = E h_sigma(g) + ½ ∫_sigma^∞ E||Π_T(nu g)||^2/nu^2 d nu.
DecompositionResult verify_projection_decomposition(const ConvexBody& T, const GaussianSampleSet& s, double sigma,
                                                    const QuadratureOptions& q = {});

struct PointwiseResult {
  double h = 0.0, h_sigma = 0.0, integral = 0.0, residual = 0.0, quad_error = 0.0;
  bool holds = false;
};
// h(x) = h_sigma(x) + ½ ∫_sigma^∞ ||Π_T(nu x)||^2/nu^2 d nu, adaptive quadrature.
PointwiseResult pointwise_identity(const ConvexBody& T, CSpan x, double sigma);

}  // namespace gw
