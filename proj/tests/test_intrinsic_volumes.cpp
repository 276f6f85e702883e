#include <doctest.h>

#include <cmath>
#include <random>

#include "gwidth/intrinsic_volumes.hpp"
#include "gwidth/l1_analysis.hpp"
#include "gwidth/special.hpp"

using namespace gw;

namespace {

// Steiner: Vol(K + rB) = sum_j kappa_{d-j} V_j r^{d-j}.
double steiner(const IntrinsicVolumeProfile& p, double r) {
  double s = 0.0;
  for (int j = 0; j <= p.d; ++j) s += std::exp(log_unit_ball_volume(p.d - j) + p.log_v(j)) * std::pow(r, p.d - j);
  return s;
}

// Hit-or-miss volume of {x : dist(x, K) <= r} inside a box of half-width L.
template <class Dist>
double mc_parallel_volume(int d, double L, double r, Dist dist, int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-L, L);
  Vec x(d);
  int hit = 0;
  for (int k = 0; k < n; ++k) {
    for (auto& v : x) v = u(rng);
    if (dist(x) <= r) ++hit;
  }
  return std::pow(2 * L, d) * hit / n;
}

}  // namespace

TEST_CASE("segment and low-dimensional profiles") {
  const IntrinsicVolumeProfile seg = cube_profile(1, 0.5);
  CHECK(std::exp(seg.log_v(1)) == doctest::Approx(1.0));
  CHECK(peak_index_diam(seg, 1.0) == 1);
  const IntrinsicVolumeProfile c1 = crosspolytope_profile(1);
  CHECK(std::exp(c1.log_v(1)) == doctest::Approx(2.0));
  // A disc of radius 1: V_1 = pi (half perimeter), V_2 = pi.
  const IntrinsicVolumeProfile disc = ball_profile(2);
  CHECK(std::exp(disc.log_v(1)) == doctest::Approx(M_PI));
  CHECK(std::exp(disc.log_v(2)) == doctest::Approx(M_PI));
  // V_1 of the ball is sqrt(2 pi) E||g||.
  for (int d : {3, 10, 50})
    CHECK(std::exp(ball_profile(d).log_v(1)) == doctest::Approx(kSqrt2Pi * expected_gaussian_norm(d)).epsilon(1e-12));
}

TEST_CASE("Steiner formula in the plane against the exact parallel area") {
  const double s = 0.7, r = 0.3;
  const IntrinsicVolumeProfile sq = cube_profile(2, s);
  CHECK(steiner(sq, r) == doctest::Approx(4 * s * s + 8 * s * r + M_PI * r * r).epsilon(1e-12));
  // The diamond |x|+|y| <= 1 has side sqrt 2, perimeter 4 sqrt 2.
  const IntrinsicVolumeProfile dm = crosspolytope_profile(2);
  CHECK(steiner(dm, r) == doctest::Approx(2.0 + 4 * std::sqrt(2.0) * r + M_PI * r * r).epsilon(1e-8));
}

TEST_CASE("parallel volumes by Monte Carlo") {
  const int n = 400000;
  {
    const double s = 0.5, r = 0.4;
    auto dist = [&](const Vec& x) {
      double q = 0;
      for (double v : x) q += std::pow(std::max(std::fabs(v) - s, 0.0), 2);
      return std::sqrt(q);
    };
    const double mc = mc_parallel_volume(3, s + r, r, dist, n, 5);
    CHECK(mc == doctest::Approx(steiner(cube_profile(3, s), r)).epsilon(0.01));
  }
  {
    const double r = 0.3;
    auto dist = [&](const Vec& x) { return dist2(x, project_l1(x, 1.0)); };
    const double mc = mc_parallel_volume(3, 1 + r, r, dist, n, 6);
    CHECK(mc == doctest::Approx(steiner(crosspolytope_profile(3), r)).epsilon(0.01));
  }
}

TEST_CASE("homogeneity") {
  const IntrinsicVolumeProfile p = crosspolytope_profile(12);
  for (double c : {0.3, 4.0})
    for (int i = 0; i <= 12; ++i) CHECK(p.scaled(c).log_v(i) == doctest::Approx(p.log_v(i) + i * std::log(c)));
}

TEST_CASE("crosspolytope ratio routes and direct formula") {
  // Hand value: d = 2, i = 0 gives V_0/V_1 = 1/(2 sqrt 2).
  double a = 0, b = 0;
  crosspolytope_ratio(0, 2, 1e-8, &a, &b);
  CHECK(a == doctest::Approx(1 / (2 * std::sqrt(2.0))).epsilon(1e-10));
  CHECK(b == doctest::Approx(1 / (2 * std::sqrt(2.0))).epsilon(1e-10));
  for (int d : {8, 16, 32}) {
    const IntrinsicVolumeProfile p = crosspolytope_profile(d);
    for (int i = 0; i <= d - 2; ++i) {
      crosspolytope_ratio(i, d, 1e-8, &a, &b);
      CHECK(std::fabs(a - b) <= 1e-8 * b);
    }
    for (int i = 0; i <= d; ++i) CHECK(p.log_v(i) == doctest::Approx(crosspolytope_log_v_direct(i, d)).epsilon(1e-8));
    CHECK(std::exp(p.log_v(1)) == doctest::Approx(kSqrt2Pi * l1_width(d)).epsilon(1e-6));
  }
  for (int d : {8, 64})
    for (int i : {0, 1, d / 2, d - 2}) CHECK(check_ybound(i, d).holds());
}

TEST_CASE("profiles are unimodal and log-concave") {
  for (int d = 4; d <= 64; ++d) {
    const auto rep = check_unimodal_logconcave(crosspolytope_profile(d));
    CHECK_MESSAGE(rep.holds(), "d = " << d);
  }
  CHECK(check_unimodal_logconcave(ball_profile(20, 3.0)).holds());
  CHECK(check_unimodal_logconcave(cube_profile(20, 0.2)).holds());
}

TEST_CASE("peak index thresholds and monotonicity") {
  for (int d : {2, 5, 16}) {
    const double s = 1.3;
    const IntrinsicVolumeProfile cube = cube_profile(d, s);
    CHECK(check_peak_thresholds(cube, s * d * std::sqrt(2 / M_PI), s / d).holds());
    const double r = 0.8;
    const IntrinsicVolumeProfile ball = ball_profile(d, r);
    CHECK(check_peak_thresholds(ball, r * expected_gaussian_norm(d), r / d).holds());
  }
  const IntrinsicVolumeProfile p = crosspolytope_profile(40);
  int prev = p.d + 1;
  for (int k = 0; k < 50; ++k) {
    const double sigma = std::pow(10.0, -4 + 6.0 * k / 49);
    const int i = peak_index_sigma(p, sigma);
    CHECK(i <= prev);
    prev = i;
  }
  CHECK(prev == 0);
}

TEST_CASE("McMullen limit and Wills inequalities") {
  const int d = 16;
  const IntrinsicVolumeProfile p = crosspolytope_profile(d);
  const double w = l1_width(d);
  const auto rep = check_mcmullen(p, w, {0.01, 0.1, 1.0, 10.0, 1e3});
  CHECK(rep.holds());
  CHECK(1e3 * wills_log(p.gaussian_scaled(1e3)) / w == doctest::Approx(1.0).epsilon(0.02));
  CHECK(check_wills_bracket(p, w, 0.05).holds());
  CHECK(check_width_peak(p, w, 2.0).holds());

  GaussianSampleSet s(d, 4000, 3);
  const ConvexBody T = ConvexBody::l1(d);
  LocalWidth W(T, s);
  CHECK(check_vitale(p, W, {0.1, 1.0, 10.0}).holds());
  CHECK(check_lower_wills(p, T, s).holds());
}

TEST_CASE("width sandwich across dimensions") {
  for (int d : {8, 32, 128, 256}) {
    const IntrinsicVolumeProfile p = crosspolytope_profile(d);
    CHECK(check_width_peak(p, l1_width(d), 2.0).holds());
  }
  for (int d : {4, 16, 64}) {
    const auto rep = check_width_peak(ball_profile(d), expected_gaussian_norm(d), 2.0);
    CHECK(rep.holds());
    const double is = rep.recorded.at("i_star");
    CHECK(is / std::sqrt(d) > 0.2);
    CHECK(is / std::sqrt(d) < 3.0);
  }
}
