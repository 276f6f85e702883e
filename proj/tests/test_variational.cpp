#include <doctest.h>

#include <cmath>

#include "gwidth/variational.hpp"

using namespace gw;

TEST_CASE("closed-form values") {
  const Vec zero(5, 0.0);
  CHECK(ellipsoid_wills_bound(zero, 0.7) == doctest::Approx(0.35));
  const Vec ones{1.0, 1.0};
  CHECK(ellipsoid_wills_bound(ones, 1.0) == doctest::Approx(0.5 + std::log(2.0)).epsilon(1e-14));
  const Vec one{1.0};
  CHECK(ellipsoid_local_bound(one, 0.25) == doctest::Approx(1.5));
  CHECK(ellipsoid_local_bound(one, 1e6) > 1e6);
  CHECK(crosspolytope_bound(16) == doctest::Approx(3.4399).epsilon(1e-4));
  CHECK_THROWS_AS(ellipsoid_wills_bound(ones, 0.0), ConfigError);
  CHECK_THROWS_AS(crosspolytope_bound(1), ConfigError);
}

TEST_CASE("crosspolytope bound excess decreases to zero") {
  double prev = 1e300;
  for (int k = 2; k <= 16; ++k) {
    const int d = 1 << k;
    const double gap = crosspolytope_bound(d) - std::sqrt(2 * std::log(double(d)));
    CHECK(gap > 0.0);
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("golden-section minimum matches a dense scan") {
  for (const Vec& a : {Vec{1, 0.5, 0.25, 0.125}, Vec(20, 1.0), Vec{3.0, 0.01}}) {
    for (BoundKind kind : {BoundKind::Plain, BoundKind::Localized}) {
      auto f = [&](double l) { return kind == BoundKind::Plain ? ellipsoid_wills_bound(a, l) : ellipsoid_local_bound(a, l); };
      const VariationalBound b = minimize_lambda(f, kind);
      double best = 1e300;
      for (int k = 0; k <= 24000; ++k) best = std::min(best, f(std::exp(std::log(1e-6) + k * std::log(1e12) / 24000)));
      CHECK(b.value <= best * (1 + 1e-9));
      CHECK(b.value == doctest::Approx(best).epsilon(1e-3));
    }
  }
}

TEST_CASE("sigma-rescaled bound tends to the ellipsoid width limit") {
  Vec a(32);
  for (int i = 0; i < 32; ++i) a[i] = 1.0 / (i + 1);
  const double target = norm2(a);
  double prev = 0.0;
  for (double sigma : {1.0, 10.0, 100.0, 1e4}) {
    const double b = ellipsoid_sigma_bound(a, sigma);
    CHECK(b <= target * (1 + 1e-9));
    CHECK(b >= prev);
    prev = b;
  }
  CHECK(prev == doctest::Approx(target).epsilon(1e-3));
}

TEST_CASE("Monte Carlo dominance") {
  GaussianSampleSet s(32, 4000, 11);
  const ConvexBody E = ConvexBody::ellipsoid([] {
    Vec a(32);
    for (int i = 0; i < 32; ++i) a[i] = 1.0 / (i + 1);
    return a;
  }());
  const auto rep = check_simplepb(E, s, {1e-3, 1e-2, 0.1, 1.0, 10.0});
  CHECK(rep.holds());
  for (int d : {16, 64}) {
    GaussianSampleSet t(d, 4000, 12);
    CHECK(check_crosspolytope_bound(d, t).holds());
  }
  GaussianSampleSet u(64, 4000, 13);
  CHECK(check_width_limit(Vec(64, 0.5), u, true).holds());
}
