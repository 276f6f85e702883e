#include "gwidth/intrinsic_volumes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>

#include "gwidth/decomposition.hpp"
#include "gwidth/l1_analysis.hpp"
#include "gwidth/special.hpp"

namespace gw {

double IntrinsicVolumeProfile::log_v(int i) const {
  require(i >= 0 && i <= d, "profile: index out of range");
  return base_log[i] + i * std::log(scale);
}

Vec IntrinsicVolumeProfile::log_values() const {
  Vec v(d + 1);
  for (int i = 0; i <= d; ++i) v[i] = log_v(i);
  return v;
}

IntrinsicVolumeProfile IntrinsicVolumeProfile::scaled(double c) const {
  require(c > 0.0 && std::isfinite(c), "profile: scale must be positive");
  IntrinsicVolumeProfile p = *this;
  p.scale *= c;
  return p;
}

IntrinsicVolumeProfile IntrinsicVolumeProfile::gaussian_scaled(double sigma) const {
  require(sigma > 0.0, "profile: sigma must be positive");
  return scaled(1.0 / (sigma * kSqrt2Pi));
}

nlohmann::json IntrinsicVolumeProfile::to_json() const {
  Vec kappa(d + 1);
  for (int i = 0; i <= d; ++i) kappa[i] = std::exp(log_unit_ball_volume(i));
  return {{"body", body}, {"dim", d}, {"scale", scale}, {"log_values", log_values()}, {"kappa", kappa}};
}

IntrinsicVolumeProfile ball_profile(int d, double radius) {
  require(d >= 1 && radius > 0.0, "ball profile: need d >= 1 and radius > 0");
  IntrinsicVolumeProfile p;
  p.body = "ball";
  p.d = d;
  p.base_log.resize(d + 1);
  for (int j = 0; j <= d; ++j)
    p.base_log[j] = log_binom(d, j) + log_unit_ball_volume(d) - log_unit_ball_volume(d - j);
  p.scale = radius;
  return p;
}

IntrinsicVolumeProfile cube_profile(int d, double half_width) {
  require(d >= 1 && half_width > 0.0, "cube profile: need d >= 1 and half-width > 0");
  IntrinsicVolumeProfile p;
  p.body = "cube";
  p.d = d;
  p.base_log.resize(d + 1);
  for (int j = 0; j <= d; ++j) p.base_log[j] = log_binom(d, j) + j * std::log(2.0);
  p.scale = half_width;
  return p;
}

double log_erf_moment(double k, int m, int power) {
  require(k > 0.0 && m >= 0 && power >= 0, "erf moment: need k > 0, m >= 0, power >= 0");
  auto logf = [&](double x) {
    if (x <= 0.0) return (m > 0 || power > 0) ? -std::numeric_limits<double>::infinity() : 0.0;
    return power * std::log(x) - k * x * x + m * std::log(std::erf(x));
  };
  // The integrand is log-concave; locate its mode from the sign of the slope.
  double mode = 0.0;
  if (m > 0 || power > 0) {
    auto slope = [&](double x) {
      return power / x - 2.0 * k * x + m * (2.0 * kInvSqrtPi) * std::exp(-x * x) / std::erf(x);
    };
    double lo = 1e-12, hi = 1.0;
    while (slope(hi) > 0.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (slope(mid) > 0.0 ? lo : hi) = mid;
    }
    mode = 0.5 * (lo + hi);
  }
  const double peak = logf(mode > 0.0 ? mode : 0.0);
  auto f = [&](double x) { return std::exp(logf(x) - peak); };
  // Composite Gauss-Legendre: the integrand is smooth and unimodal, and an
  // adaptive rule stalls at the requested accuracy.
  const double upper = mode + 14.0 / std::sqrt(k);
  auto panels = [&](double a, double b, int n) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
      acc += boost::math::quadrature::gauss<double, 20>::integrate(f, a + (b - a) * j / n, a + (b - a) * (j + 1) / n);
    return acc;
  };
  double s = panels(mode, upper, 48);
  if (mode > 0.0) s += panels(0.0, mode, 48);
  return peak + std::log(s);
}

double crosspolytope_mean_y(int i, int d) {
  require(i >= 0 && i <= d - 1, "mean Y: need 0 <= i <= d-1");
  const int m = d - i - 1;
  return std::exp(log_erf_moment(i + 1.0, m, 1) - log_erf_moment(i + 1.0, m, 0));
}

double crosspolytope_ratio(int i, int d, double tol, double* route_a, double* route_b) {
  require(d >= 2 && i >= 0 && i <= d - 2, "crosspolytope ratio: need 0 <= i <= d-2");
  const int m = d - i - 1;
  const double a = (i + 1.0) / (2.0 * std::sqrt(kPi) * crosspolytope_mean_y(i, d));
  const double b = (i + 1.0) * (i + 1.0) / (2.0 * m) *
                   std::exp(log_erf_moment(i + 1.0, m, 0) - log_erf_moment(i + 2.0, m - 1, 0));
  if (route_a) *route_a = a;
  if (route_b) *route_b = b;
  if (std::fabs(a - b) > tol * std::max(a, b))
    throw NumericalError("crosspolytope ratio: quadrature routes disagree at i=" + std::to_string(i) +
                         ", d=" + std::to_string(d));
  return 0.5 * (a + b);
}

double crosspolytope_log_v_direct(int i, int d) {
  require(d >= 1 && i >= 0 && i <= d, "direct crosspolytope volume: index out of range");
  if (i == d) return d * std::log(2.0) - std::lgamma(d + 1.0);
  return (i + 1) * std::log(2.0) + log_binom(d, i + 1) + std::log(i + 1.0) - std::lgamma(i + 1.0) -
         0.5 * std::log(kPi) + log_erf_moment(i + 1.0, d - i - 1, 0);
}

IntrinsicVolumeProfile crosspolytope_profile(int d, double ratio_tol) {
  require(d >= 1, "crosspolytope profile: d must be positive");
  IntrinsicVolumeProfile p;
  p.body = "l1";
  p.d = d;
  p.base_log.assign(d + 1, 0.0);
  p.base_log[d] = d * std::log(2.0) - std::lgamma(d + 1.0);
  // V_{d-1} = half the surface area = 2^{d-1} sqrt(d) / (d-1)!.
  p.base_log[d - 1] = p.base_log[d] + std::log(d * std::sqrt(static_cast<double>(d)) / 2.0);
  for (int i = d - 2; i >= 0; --i) p.base_log[i] = p.base_log[i + 1] + std::log(crosspolytope_ratio(i, d, ratio_tol));
  if (std::fabs(p.base_log[0]) > 1e-6)
    throw NumericalError("crosspolytope profile: chained V_0 differs from 1 (log " + std::to_string(p.base_log[0]) + ")");
  p.base_log[0] = 0.0;
  const double v1_width = std::log(kSqrt2Pi * l1_width(d));
  if (std::fabs(p.base_log[1] - v1_width) > std::log(1.01))
    throw NumericalError("crosspolytope profile: V_1 disagrees with the width route by more than 1%");
  return p;
}

CheckReport check_ybound(int i, int d) {
  CheckReport rep;
  rep.name = "ybound";
  const double ey = crosspolytope_mean_y(i, d);
  const double bound = std::sqrt(std::log(static_cast<double>(d) / (i + 1))) + 1.0 / std::sqrt(kPi * (i + 1));
  rep.add("E[Y] <= sqrt(log(d/(i+1))) + 1/sqrt(pi(i+1))", ey, bound);
  if (i <= d - 2) {
    const double ratio = crosspolytope_ratio(i, d);
    // Route (a) carries the factor 2: V_i/V_{i+1} = (i+1)/(2 sqrt(pi) E[Y]).
    rep.add("ratio >= (i+1)/(2 sqrt(pi) bound)", (i + 1.0) / (2.0 * std::sqrt(kPi) * bound), ratio, 1e-12 * ratio);
  }
  rep.record("E[Y]", ey);
  return rep;
}

double wills_log(const IntrinsicVolumeProfile& p) { return log_sum_exp(p.log_values()); }

int peak_index(const IntrinsicVolumeProfile& p, int first) {
  int best = first;
  double bv = p.log_v(first);
  for (int i = first + 1; i <= p.d; ++i) {
    const double v = p.log_v(i);
    if (v > bv) {
      bv = v;
      best = i;
    }
  }
  return best;
}

int peak_index_sigma(const IntrinsicVolumeProfile& p, double sigma) { return peak_index(p.gaussian_scaled(sigma), 0); }

int peak_index_diam(const IntrinsicVolumeProfile& p, double diam) { return peak_index(p.scaled(1.0 / diam), 1); }

CheckReport check_unimodal_logconcave(const IntrinsicVolumeProfile& p) {
  CheckReport rep;
  rep.name = "profile_shape";
  const Vec L = p.log_values();
  const double tol = 1e-9;
  rep.add("V_0 = 1", std::fabs(L[0]), 0.0, 1e-12);
  bool falling = false, unimodal = true;
  for (int i = 1; i <= p.d; ++i) {
    if (L[i] < L[i - 1] - tol) falling = true;
    if (falling && L[i] > L[i - 1] + tol) unimodal = false;
  }
  rep.add("unimodal", unimodal ? 0.0 : 1.0, 0.0);
  double worst_step = -1e300, worst_pow = -1e300;
  for (int i = 1; i <= p.d; ++i) {
    worst_step = std::max(worst_step, (L[i] - L[i - 1]) - (L[1] - std::log(static_cast<double>(i))));
    worst_pow = std::max(worst_pow, L[i] - (i * L[1] - std::lgamma(i + 1.0)));
  }
  rep.add("V_i/V_{i-1} <= V_1/i (log gap)", worst_step, 0.0, tol);
  rep.add("V_i <= V_1^i/i! (log gap)", worst_pow, 0.0, tol);
  rep.record("peak", peak_index(p));
  return rep;
}

CheckReport check_mcmullen(const IntrinsicVolumeProfile& p, double width, const std::vector<double>& sigmas) {
  CheckReport rep;
  rep.name = "mcmullen";
  for (double s : sigmas) {
    const double lhs = s * wills_log(p.gaussian_scaled(s));
    rep.add("sigma log W <= w at sigma=" + std::to_string(s), lhs, width, 1e-9 * width);
    rep.record("ratio@" + std::to_string(s), lhs / width);
  }
  return rep;
}

CheckReport check_vitale(const IntrinsicVolumeProfile& p, const LocalWidth& W, const std::vector<double>& sigmas,
                         const SolverOptions& opt) {
  CheckReport rep;
  rep.name = "vitale";
  for (double s : sigmas) {
    const FixedPoint fp = solve_r(W, s, opt);
    const double se = W(fp.r).se;
    const double rhs = s * wills_log(p.gaussian_scaled(s));
    rep.add("T(sigma) <= sigma log W at sigma=" + std::to_string(s), fp.value, rhs, 3.0 * se);
    rep.record("T/(sigma log W)@" + std::to_string(s), fp.value / rhs);
  }
  return rep;
}

CheckReport check_lower_wills(const IntrinsicVolumeProfile& p, const ConvexBody& T, const GaussianSampleSet& s) {
  CheckReport rep;
  rep.name = "lower_wills";
  const MCEstimate w = est_width(T, s);
  const TailIntegral I = integrate_proj_term(T, s, 1.0);
  const double lhs = w.value - I.value;
  const double rhs = wills_log(p.gaussian_scaled(1.0));
  rep.add("w - ½∫_1^∞ E||Π(nu g)||^2/nu^2 <= log W(T/√2π)", lhs, rhs, 3.0 * (w.se + I.error()));
  rep.record("lower", lhs);
  rep.record("log W", rhs);
  return rep;
}

CheckReport check_wills_bracket(const IntrinsicVolumeProfile& p, double width, double sigma) {
  CheckReport rep;
  rep.name = "wills_bracket";
  if (width < 2.0 * sigma) {
    rep.notes.push_back("w < 2 sigma: bracket not asserted");
    return rep;
  }
  const IntrinsicVolumeProfile K = p.gaussian_scaled(sigma);
  const double M = K.log_v(peak_index(K, 1));
  const double lw = wills_log(K);
  rep.add("max log V_i <= log W", M, lw, 1e-12 * std::fabs(lw));
  rep.add("log W <= 8 max log V_i", lw, 8.0 * M, 1e-12 * std::fabs(lw));
  rep.record("logW/maxlogV", lw / M);
  return rep;
}

CheckReport check_width_peak(const IntrinsicVolumeProfile& p, double width, double diam) {
  CheckReport rep;
  rep.name = "width_peak";
  const int is = peak_index_diam(p, diam);
  rep.add("i* diam / sqrt(2 pi) <= w", is * diam / kSqrt2Pi, width);
  rep.add("w <= 21 i* diam", width, 21.0 * is * diam);
  rep.add("i* <= floor(sqrt(2 pi d))", is, std::floor(std::sqrt(2.0 * kPi * p.d)));
  rep.record("i_star", is);
  rep.record("w/(i* diam)", width / (is * diam));
  return rep;
}

CheckReport check_width_peak_sigma(const IntrinsicVolumeProfile& p, double width, double sigma, double r_integral) {
  CheckReport rep;
  rep.name = "width_peak_sigma";
  const int is = peak_index_sigma(p, sigma);
  rep.add("w <= 45 sigma i*_sigma + ∫ r^2/nu^2", width, 45.0 * sigma * is + r_integral);
  rep.record("i_star_sigma", is);
  return rep;
}

CheckReport check_peak_thresholds(const IntrinsicVolumeProfile& p, double width, double vol_over_surface, double eps) {
  CheckReport rep;
  rep.name = "peak_thresholds";
  const double s0 = width, sd = std::sqrt(2.0 / kPi) * vol_over_surface;
  const bool z_hi = peak_index_sigma(p, s0 * (1 + eps)) == 0;
  const bool z_lo = peak_index_sigma(p, s0 * (1 - eps)) != 0;
  const bool d_lo = peak_index_sigma(p, sd * (1 - eps)) == p.d;
  const bool d_hi = peak_index_sigma(p, sd * (1 + eps)) != p.d;
  rep.add("i*_sigma = 0 just above sigma = w", z_hi ? 0 : 1, 0);
  rep.add("i*_sigma > 0 just below sigma = w", z_lo ? 0 : 1, 0);
  rep.add("i*_sigma = d just below sqrt(2/pi) Vol/Sf", d_lo ? 0 : 1, 0);
  rep.add("i*_sigma < d just above sqrt(2/pi) Vol/Sf", d_hi ? 0 : 1, 0);
  return rep;
}

}  // namespace gw
