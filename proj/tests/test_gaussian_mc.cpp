#include <doctest.h>

#include <cmath>

#include "gwidth/gaussian_mc.hpp"
#include "gwidth/l1_analysis.hpp"
#include "gwidth/special.hpp"

using namespace gw;

TEST_CASE("Philox4x32-10 known answers") {
  auto a = philox4x32({0, 0, 0, 0}, {0, 0});
  CHECK(a[0] == 0x6627e8d5u);
  CHECK(a[1] == 0xe169c58du);
  CHECK(a[2] == 0xbc57ac4cu);
  CHECK(a[3] == 0x9b00dbd8u);
  auto b = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  CHECK(b[0] == 0x408f276du);
  CHECK(b[1] == 0x41c83b0eu);
  CHECK(b[2] == 0xa20bc7c6u);
  CHECK(b[3] == 0x6d5451fdu);
  auto c = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  CHECK(c[0] == 0xd16cfe09u);
  CHECK(c[1] == 0x94fdccebu);
  CHECK(c[2] == 0x5001e420u);
  CHECK(c[3] == 0x24126ea1u);
}

TEST_CASE("normal quantile inverts the CDF") {
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
  CHECK(normal_quantile(0.5) == 0.0);
  for (double p : {1e-300, 1e-100, 1e-20, 1e-8, 1e-3, 0.02, 0.2, 0.4, 0.6, 0.9, 0.999}) {
    const double x = normal_quantile(p);
    CHECK(normal_cdf(x) == doctest::Approx(p).epsilon(1e-13));
    if (p >= 1e-8) CHECK(normal_quantile(1.0 - p) == doctest::Approx(-x).epsilon(1e-8));
  }
  CHECK_THROWS_AS(normal_quantile(0.0), ConfigError);
  CHECK_THROWS_AS(normal_quantile(1.0), ConfigError);
}

TEST_CASE("sample sets are reproducible and row-local") {
  GaussianSampleSet a(5, 100, 42), b(5, 100, 42), c(5, 10, 42), d(5, 100, 43);
  CHECK(a.data() == b.data());
  for (int j = 0; j < 5; ++j) CHECK(a.row(7)[j] == c.row(7)[j]);
  CHECK(a.data() != d.data());
  CHECK_THROWS_AS(GaussianSampleSet(1 << 20, 1 << 8, 1), ConfigError);
  CHECK_THROWS_AS(GaussianSampleSet(0, 10, 1), ConfigError);
  CHECK_THROWS_AS(GaussianSampleSet(3, 0, 1), ConfigError);
}

TEST_CASE("sample moments") {
  GaussianSampleSet s(4, 50000, 1);
  const Vec& v = s.data();
  Vec sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) sq[i] = v[i] * v[i];
  const auto m = mean_estimate(v);
  const auto m2 = mean_estimate(sq);
  CHECK(std::fabs(m.value) <= 5 * m.se);
  CHECK(std::fabs(m2.value - 1.0) <= 5 * m2.se);
  const auto nrm = mean_norm(s);
  CHECK(std::fabs(nrm.value - expected_gaussian_norm(4)) <= 5 * nrm.se);
}

TEST_CASE("estimates do not depend on the thread count") {
  GaussianSampleSet s(16, 4000, 9);
  const ConvexBody T = ConvexBody::l1(16);
  set_default_threads(1);
  const auto a = est_local_width(T, 0.5, s);
  const auto pa = penalized_width(T, 0.7, s);
  set_default_threads(4);
  const auto b = est_local_width(T, 0.5, s);
  const auto pb = penalized_width(T, 0.7, s);
  set_default_threads(0);
  CHECK(a.value == b.value);
  CHECK(a.se == b.se);
  CHECK(pa.value == pb.value);
}

TEST_CASE("width estimators against closed forms") {
  GaussianSampleSet s(16, 40000, 5);
  const auto w = est_width(ConvexBody::l1(16), s);
  CHECK(std::fabs(w.value - l1_width(16)) <= 4 * w.se);
  const auto wb = est_width(ConvexBody::ball(16, 2.0), s);
  CHECK(wb.value == doctest::Approx(2.0 * mean_norm(s).value).epsilon(1e-12));
  const auto wc = est_width(ConvexBody::cube(16, 1.0), s);
  CHECK(std::fabs(wc.value - 16 * std::sqrt(2 / M_PI)) <= 4 * wc.se);
}

TEST_CASE("prepared local width matches the generic estimator") {
  GaussianSampleSet s(16, 3000, 2);
  for (const ConvexBody& T : {ConvexBody::l1(16, 1.5), ConvexBody::ball(16, 0.8)}) {
    LocalWidth W(T, s);
    for (double r : {0.01, 0.1, 0.3, 0.7, 1.0, 3.0}) {
      CHECK(W(r).value == doctest::Approx(est_local_width(T, r, s).value).epsilon(1e-13));
    }
    CHECK(W.width() == doctest::Approx(est_width(T, s).value).epsilon(1e-14));
  }
}

TEST_CASE("penalized width and projection moments obey elementary bounds") {
  GaussianSampleSet s(16, 20000, 4);
  const ConvexBody T = ConvexBody::l1(16);
  const double w = est_width(T, s).value;
  double prev = 0.0;
  for (double sigma : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const auto p = penalized_width(T, sigma, s);
    CHECK(p.value <= w + 1e-12);
    CHECK(p.value >= prev);
    prev = p.value;
    const auto m = proj_second_moment(T, sigma, s);
    CHECK(m.value <= sigma * sigma * 16.0 * 1.05);
    CHECK(m.value <= 1.0 + 1e-12);
  }
  // Unit-scale penalized width of the 16-dimensional crosspolytope.
  CHECK(penalized_width(T, 1.0, s).value <= 3.4399);
  CHECK_THROWS_AS(penalized_width(T, 0.0, s), ConfigError);
  CHECK_THROWS_AS(est_width(ConvexBody::l1(8), s), ConfigError);
}
