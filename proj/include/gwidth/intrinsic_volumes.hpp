#pragma once

#include <string>
#include <vector>

#include "gwidth/fixed_points.hpp"
#include "gwidth/report.hpp"
#include "gwidth/types.hpp"

namespace gw {

// log V_0 .. log V_d of c * K for a base body K.
struct IntrinsicVolumeProfile {
  std::string body;
  int d = 0;
  Vec base_log;  // base body
  double scale = 1.0;

  double log_v(int i) const;
  Vec log_values() const;
  IntrinsicVolumeProfile scaled(double c) const;
  // Profile of T / (sigma sqrt(2 pi)).
  IntrinsicVolumeProfile gaussian_scaled(double sigma) const;
  nlohmann::json to_json() const;
};

IntrinsicVolumeProfile ball_profile(int d, double radius = 1.0);
IntrinsicVolumeProfile cube_profile(int d, double half_width = 1.0);
// Unit crosspolytope, chained from V_d = 2^d/d! and the boundary ratio.
IntrinsicVolumeProfile crosspolytope_profile(int d, double ratio_tol = 1e-8);

// ∫_0^∞ exp(-k x^2) erf(x)^m dx (log), and the first moment of that density.
double log_erf_moment(double k, int m, int power);
double crosspolytope_mean_y(int i, int d);
// V_i / V_{i+1} for the unit crosspolytope by both routes; throws if they
// disagree by more than tol.
double crosspolytope_ratio(int i, int d, double tol = 1e-8, double* route_a = nullptr, double* route_b = nullptr);
// Closed-form log V_i of the unit crosspolytope (an independent oracle).
double crosspolytope_log_v_direct(int i, int d);
CheckReport check_ybound(int i, int d);

double wills_log(const IntrinsicVolumeProfile& p);
// Smallest argmax of log V_i over i in [first, d].
int peak_index(const IntrinsicVolumeProfile& p, int first = 0);
// i*_sigma = peak index of T / (sigma sqrt(2 pi)) over 0..d.
int peak_index_sigma(const IntrinsicVolumeProfile& p, double sigma);
// i* = peak index of T / diam(T) over 1..d.
int peak_index_diam(const IntrinsicVolumeProfile& p, double diam);

CheckReport check_unimodal_logconcave(const IntrinsicVolumeProfile& p);
// sigma log W(T/(sigma√2π)) <= w for each sigma; limit at large sigma recorded.
CheckReport check_mcmullen(const IntrinsicVolumeProfile& p, double width, const std::vector<double>& sigmas);
// T(sigma) <= sigma log W(T/(sigma√2π)) with T from the sample set.
CheckReport check_vitale(const IntrinsicVolumeProfile& p, const LocalWidth& W, const std::vector<double>& sigmas,
                         const SolverOptions& opt = {});
// log W(T/√2π) >= w - ½ ∫_1^∞ E||Π_T(nu g)||^2/nu^2 d nu.
CheckReport check_lower_wills(const IntrinsicVolumeProfile& p, const ConvexBody& T, const GaussianSampleSet& s);
// max_{i>=1} log V_i <= log W <= 8 max_{i>=1} log V_i for T/(sigma√2π) when w >= 2 sigma.
CheckReport check_wills_bracket(const IntrinsicVolumeProfile& p, double width, double sigma);
// i* diam/√(2π) <= w <= 21 i* diam; i* <= floor(sqrt(2 pi d)).
CheckReport check_width_peak(const IntrinsicVolumeProfile& p, double width, double diam);
// w <= 45 sigma i*_sigma + ∫_sigma^∞ r(nu)^2/nu^2 d nu (full integral passed in).
CheckReport check_width_peak_sigma(const IntrinsicVolumeProfile& p, double width, double sigma, double r_integral);
// i*_sigma = 0 iff sigma >= w; i*_sigma = d iff sigma < sqrt(2/pi) Vol/Sf, probed at (1 ± eps).
CheckReport check_peak_thresholds(const IntrinsicVolumeProfile& p, double width, double vol_over_surface,
                                  double eps = 1e-9);

}  // namespace gw
