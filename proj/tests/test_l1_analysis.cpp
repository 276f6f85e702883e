#include <doctest.h>

#include <cmath>
#include <random>

#include "gwidth/l1_analysis.hpp"
#include "gwidth/special.hpp"

using namespace gw;

namespace {
// Threshold of the l1 projection by bisection on sum (|y| - t)_+ = radius.
double dual_threshold(CSpan y, double radius) {
  auto f = [&](double t) {
    double s = 0.0;
    for (double v : y) s += std::max(0.0, std::fabs(v) - t);
    return s;
  };
  if (f(0.0) <= radius) return 0.0;
  double lo = 0.0, hi = norm_inf(y);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    (f(m) > radius ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}
}  // namespace

TEST_CASE("l1 projection threshold matches the dual bisection") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> N;
  for (int d : {1, 2, 5, 50, 500}) {
    for (int k = 0; k < 20; ++k) {
      Vec y(d);
      for (double& v : y) v = 2.0 * N(rng);
      for (double radius : {0.1, 1.0, 3.0}) {
        double th = -1;
        const Vec p = project_l1(y, radius, &th);
        CHECK(th == doctest::Approx(dual_threshold(y, radius)).epsilon(1e-10));
        if (norm1(y) > radius) CHECK(norm1(p) == doctest::Approx(radius).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("S1, S2 and the Mills ratio") {
  CHECK(s2(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s1(0.0) == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-15));
  CHECK(mills_ratio(1.0) == doctest::Approx(0.65568).epsilon(1e-5));
  // Closed form and integral representations agree across the switch point.
  CHECK(s1(1.999999) == doctest::Approx(s1(2.0)).epsilon(1e-5));
  CHECK(s2(1.999999) == doctest::Approx(s2(2.0)).epsilon(1e-5));
  // Direct quadrature oracle.
  for (double l : {0.3, 1.0, 2.5, 5.0, 9.0}) {
    const double a = 2.0 * integrate([&](double x) { return (x - l) * normal_pdf(x); }, l, l + 40.0, 1e-14);
    const double b = 2.0 * integrate([&](double x) { return (x - l) * (x - l) * normal_pdf(x); }, l, l + 40.0, 1e-14);
    CHECK(s1(l) == doctest::Approx(a).epsilon(1e-9));
    CHECK(s2(l) == doctest::Approx(b).epsilon(1e-9));
  }
  for (double x = 0.05; x < 50.0; x *= 1.3) CHECK(check_mills_bounds(x).holds());
  for (double l = 1.0; l <= 8.0; l += 0.25) CHECK(check_s_brackets(l).holds());
}

TEST_CASE("lambda star and its bracket") {
  const ThresholdState st = threshold_state(1e3);
  CHECK(st.in_regime);
  CHECK(s1(st.lambda_star) == doctest::Approx(1e-3).epsilon(1e-9));
  const double L = std::log(std::exp(1.0) * 1e3);
  CHECK(st.lambda_lower == doctest::Approx(std::sqrt(L / 7)));
  CHECK(st.lambda_upper == doctest::Approx(std::sqrt(2 * L)));
  CHECK(lambda_star(0.5) == 0.0);
  for (double a = 1.0 / s1(1.0); a < 1e12; a *= 3.7) CHECK(check_lambda_star(a).holds());
}

TEST_CASE("R profile") {
  CHECK(r_profile(1.0, 100) == doctest::Approx(1.0 / std::sqrt(std::log(100 * std::exp(1.0)))).epsilon(1e-12));
  CHECK(r_profile(0.001, 100) == doctest::Approx(1e-4));
  CHECK(r_profile(10.0, 100) == 1.0);
  CHECK(r_profile(0.01, 100) == doctest::Approx(0.01));
}

TEST_CASE("empirical threshold characterizes the projection") {
  GaussianSampleSet s(64, 50, 3);
  for (double sigma : {0.001, 0.01, 0.05, 0.3, 2.0})
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(threshold_characterization_error(s.row(i), sigma) <= 1e-12);
}

TEST_CASE("width of the crosspolytope") {
  CHECK(l1_width(1) == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-10));
  GaussianSampleSet s(64, 40000, 8);
  const auto w = est_width(ConvexBody::l1(64), s);
  CHECK(std::fabs(w.value - l1_width(64)) <= 4 * w.se);
  for (int d : {2, 16, 256, 4096}) CHECK(l1_width(d) <= width_from_projection(d));
}
