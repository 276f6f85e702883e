#pragma once

#include <cstdint>
#include <vector>

#include "gwidth/gaussian_mc.hpp"
#include "gwidth/report.hpp"
#include "gwidth/types.hpp"

namespace gw {

// Euclidean projection onto {||x||_1 <= radius} by sorting; the projection is
// sign(y)(|y| - theta)_+ and the threshold is returned through *theta.
Vec project_l1(CSpan y, double radius = 1.0, double* theta = nullptr);

// S1(l) = E(|xi| - l)_+ and S2(l) = E(|xi| - l)_+^2 for xi ~ N(0,1).
double s1(double lambda);
double s2(double lambda);

// inf{l >= 0 : S1(l) <= 1/alpha}.
double lambda_star(double alpha);

struct ThresholdState {
  double alpha = 0.0;
  double lambda_star = 0.0;
  double s2_at_lambda_star = 0.0;
  bool in_regime = false;  // alpha >= 1/S1(1)
  double lambda_lower = 0.0, lambda_upper = 0.0;
  double s2_lower = 0.0, s2_upper = 0.0;
};
ThresholdState threshold_state(double alpha);
CheckReport check_lambda_star(double alpha);

// Mills-ratio bracket checks at x > 0.
CheckReport check_mills_bounds(double x);
// S1 and S2 bracket checks for l in [1, 8].
CheckReport check_s_brackets(double lambda);

// Piecewise profile R(sigma, d).
double r_profile(double sigma, int d);

// Empirical threshold: inf{l >= 0 : (1/d) sum (|xi_i| - l)_+ <= 1/(sigma d)}.
double empirical_threshold(CSpan xi, double sigma);
// Π_{B1}(sigma xi) against sigma sign(xi)(|xi| - lhat)_+, max abs difference.
double threshold_characterization_error(CSpan xi, double sigma);

struct MediumSigmaRow {
  int d = 0;
  double sigma = 0.0;
  std::size_t n = 0;
  double second_moment = 0.0;
  double se = 0.0;
  double profile = 0.0;        // R(sigma, d)
  double ratio = 0.0;          // second_moment / R
  double bound = 0.0;          // 205584 sigma / sqrt(log(e d sigma))
  double characterization_err = 0.0;
  bool holds = false;
};
std::vector<MediumSigmaRow> verify_medium_sigma(const std::vector<int>& ds, int sigmas_per_d, std::uint64_t seed,
                                                std::size_t entry_budget = std::size_t{1} << 22,
                                                std::size_t max_samples = 200000);

// 1 + ∫_0^∞ R(sigma, d) / sigma^2 d sigma in closed form.
double width_from_projection(int d);
// E max_i |g_i| = ∫_0^∞ 1 - erf(t/√2)^d dt.
double l1_width(int d);

}  // namespace gw
