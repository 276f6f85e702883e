#include <doctest.h>

#include <cmath>
#include <random>

#include "gwidth/body.hpp"
#include "gwidth/dykstra.hpp"
#include "gwidth/l1_analysis.hpp"
#include "gwidth/polytope.hpp"

using namespace gw;

namespace {

Vec random_vec(std::mt19937_64& rng, int d, double scale) {
  std::normal_distribution<double> N(0.0, 1.0);
  Vec v(d);
  for (double& x : v) x = scale * N(rng);
  return v;
}

std::vector<ConvexBody> roster(int d) {
  std::vector<ConvexBody> out{ConvexBody::ball(d, 1.3), ConvexBody::l1(d, 0.8), ConvexBody::cube(d, 0.7)};
  Vec a(d);
  for (int i = 0; i < d; ++i) a[i] = 1.0 / (i + 1);
  out.push_back(ConvexBody::ellipsoid(a));
  return out;
}

ConvexBody cross_polytope(int d, double rho) {
  std::vector<Vec> v;
  for (int i = 0; i < d; ++i)
    for (double s : {-rho, rho}) {
      Vec e(d, 0.0);
      e[i] = s;
      v.push_back(e);
    }
  return ConvexBody::polytope(v);
}

ConvexBody square_polytope(double s) {
  return ConvexBody::polytope({{s, s}, {s, -s}, {-s, s}, {-s, -s}});
}

// min over theta of rho*theta + r*||(|x| - theta)_+||_2, by ternary search.
double l1_local_dual(CSpan x, double rho, double r) {
  auto f = [&](double th) {
    double s = 0.0;
    for (double v : x) s += std::pow(std::max(0.0, std::fabs(v) - th), 2);
    return rho * th + r * std::sqrt(s);
  };
  double lo = 0.0, hi = norm_inf(x);
  for (int i = 0; i < 300; ++i) {
    const double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
    (f(a) < f(b) ? hi : lo) = (f(a) < f(b) ? b : a);
  }
  return f(0.5 * (lo + hi));
}

}  // namespace

TEST_CASE("support functions match closed forms") {
  const Vec x{1.0, 1.0};
  CHECK(ConvexBody::ellipsoid({1.0, 2.0}).support(x) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  CHECK(ConvexBody::ball(2, 2.0).support(x) == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(ConvexBody::l1(2).support(Vec{0.3, -0.7}) == doctest::Approx(0.7));
  CHECK(ConvexBody::cube(2, 0.5).support(Vec{0.3, -0.7}) == doctest::Approx(0.5));
  CHECK(cross_polytope(3, 1.0).support(Vec{0.1, -2.0, 0.5}) == doctest::Approx(2.0));
}

TEST_CASE("projection examples") {
  Vec p = ConvexBody::l1(2).project(Vec{0.6, 0.6});
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-14));
  Vec q = ConvexBody::l1(2).project_intersection(0.5, Vec{2.0, 2.0});
  CHECK(q[0] == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(q[1] == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-12));
  Vec e = ConvexBody::ellipsoid({2.0, 1.0}).project(Vec{0.0, 3.0});
  CHECK(e[0] == doctest::Approx(0.0));
  CHECK(e[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("geometry descriptors") {
  auto c = ConvexBody::cube(4, 0.5);
  CHECK(c.rad() == doctest::Approx(1.0));
  CHECK(c.diam() == doctest::Approx(2.0));
  CHECK(c.inrad() == doctest::Approx(0.5));
  auto l = ConvexBody::l1(16);
  CHECK(l.inrad() == doctest::Approx(0.25));
  auto e = ConvexBody::ellipsoid({3.0, 1.0, 2.0});
  CHECK(e.rad() == 3.0);
  CHECK(e.inrad() == 1.0);
  auto sq = square_polytope(1.0);
  CHECK(sq.inrad() == doctest::Approx(1.0));
  CHECK(sq.rad() == doctest::Approx(std::sqrt(2.0)));
  CHECK(sq.diam() == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(cross_polytope(3, 1.0).inrad() == doctest::Approx(1.0 / std::sqrt(3.0)));
}

TEST_CASE("projections are idempotent, nonexpansive and satisfy the variational inequality") {
  std::mt19937_64 rng(7);
  for (int d : {1, 2, 3, 7}) {
    auto bodies = roster(d);
    if (d <= 3) bodies.push_back(cross_polytope(d, 0.9));
    for (const auto& T : bodies) {
      for (int k = 0; k < 40; ++k) {
        const Vec y = random_vec(rng, d, 2.0), z = random_vec(rng, d, 2.0);
        const Vec p = T.project(y), q = T.project(z);
        CHECK(T.contains(p, 1e-9));
        const Vec pp = T.project(p);
        CHECK(dist2(pp, p) <= 1e-9);
        CHECK(dist2(p, q) <= dist2(y, z) + 1e-9);
        // <y - p, t - p> <= 0 for feasible t; use other projections as test points.
        Vec diff(d), tp(d);
        for (int i = 0; i < d; ++i) {
          diff[i] = y[i] - p[i];
          tp[i] = q[i] - p[i];
        }
        CHECK(dot(diff, tp) <= 1e-8);
      }
    }
  }
}

TEST_CASE("intersection projections agree with Dykstra") {
  std::mt19937_64 rng(11);
  for (int d : {2, 3, 6}) {
    auto bodies = roster(d);
    if (d <= 3) bodies.push_back(cross_polytope(d, 1.0));
    for (const auto& T : bodies) {
      for (double r : {0.2, 0.5, 1.0}) {
        const ConvexBody B = ConvexBody::ball(d, r);
        for (int k = 0; k < 15; ++k) {
          const Vec y = random_vec(rng, d, 1.5);
          const Vec p = T.project_intersection(r, y);
          const auto ref = dykstra([&](CSpan v) { return T.project(v); }, [&](CSpan v) { return B.project(v); }, y,
                                   1e-13, 200000);
          CHECK(dist2(p, ref.x) <= 1e-6);
          CHECK(T.contains(p, 1e-9));
          CHECK(norm2(p) <= r * (1 + 1e-9));
        }
      }
    }
  }
}

TEST_CASE("l1 local support equals the dual threshold formula") {
  std::mt19937_64 rng(3);
  for (int d : {1, 2, 5, 16, 64}) {
    const ConvexBody T = ConvexBody::l1(d, 1.0);
    for (int k = 0; k < 30; ++k) {
      const Vec x = random_vec(rng, d, 1.0);
      for (double r : {0.05, 0.2, 0.5, 0.9, 1.0, 2.0}) {
        const double v = T.local_support(r, x).value;
        CHECK(v == doctest::Approx(l1_local_dual(x, 1.0, r)).epsilon(1e-9));
      }
    }
  }
  // Ties at the maximum.
  const ConvexBody T = ConvexBody::l1(2, 1.0);
  CHECK(T.local_support(0.6, Vec{1.0, 1.0}).value == doctest::Approx(0.6 * std::sqrt(2.0)));
  CHECK(T.local_support(0.8, Vec{1.0, 1.0}).value == doctest::Approx(1.0));
}

TEST_CASE("polytope local support matches exact l1 and cube routines") {
  std::mt19937_64 rng(5);
  for (int d : {2, 3}) {
    const ConvexBody L = ConvexBody::l1(d, 1.0), P = cross_polytope(d, 1.0);
    const ConvexBody C = ConvexBody::cube(d, 0.6);
    std::vector<Vec> cv;
    for (int m = 0; m < (1 << d); ++m) {
      Vec v(d);
      for (int i = 0; i < d; ++i) v[i] = (m >> i & 1) ? 0.6 : -0.6;
      cv.push_back(v);
    }
    const ConvexBody CP = ConvexBody::polytope(cv);
    for (int k = 0; k < 25; ++k) {
      const Vec x = random_vec(rng, d, 1.0);
      for (double r : {0.1, 0.4, 0.7, 1.5}) {
        CHECK(P.local_support(r, x).value == doctest::Approx(L.local_support(r, x).value).epsilon(1e-7));
        CHECK(CP.local_support(r, x).value == doctest::Approx(C.local_support(r, x).value).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("ellipsoid local support against planar candidate enumeration") {
  // In the plane the maximizer is the ellipse maximizer, the radial point, or
  // one of the four ellipse/circle intersection points.
  const double a1 = 2.0, a2 = 0.5;
  const ConvexBody E = ConvexBody::ellipsoid({a1, a2});
  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    const Vec x = random_vec(rng, 2, 1.0);
    for (double r : {0.3, 0.7, 1.2, 1.9, 2.5}) {
      std::vector<Vec> cand;
      const double h = E.support(x);
      cand.push_back({a1 * a1 * x[0] / h, a2 * a2 * x[1] / h});
      cand.push_back(scaled(x, r / norm2(x)));
      const double t1sq = (1.0 - r * r / (a2 * a2)) / (1.0 / (a1 * a1) - 1.0 / (a2 * a2));
      if (t1sq >= 0.0 && t1sq <= r * r)
        for (double s1 : {-1.0, 1.0})
          for (double s2 : {-1.0, 1.0}) cand.push_back({s1 * std::sqrt(t1sq), s2 * std::sqrt(r * r - t1sq)});
      double best = 0.0;
      for (const auto& t : cand)
        if (norm2(t) <= r * (1 + 1e-12) && E.contains(t, 1e-12)) best = std::max(best, dot(t, x));
      CHECK(E.local_support(r, x).value == doctest::Approx(best).epsilon(1e-10));
    }
  }
}

TEST_CASE("local support is monotone, concave in r, and bounded") {
  std::mt19937_64 rng(13);
  for (int d : {2, 8, 32}) {
    for (const auto& T : roster(d)) {
      for (int k = 0; k < 10; ++k) {
        const Vec x = random_vec(rng, d, 1.0);
        double prev = 0.0;
        for (int j = 1; j <= 20; ++j) {
          const double r = 0.1 * j * T.rad();
          const double v = T.local_support(r, x).value;
          const double vl = T.local_support(r - 0.05 * T.rad(), x).value;
          const double vh = T.local_support(r + 0.05 * T.rad(), x).value;
          CHECK(v >= prev - 1e-12);
          CHECK(v >= 0.5 * (vl + vh) - 1e-9);
          CHECK(v <= std::min(T.support(x), r * norm2(x)) + 1e-9);
          // A feasible point gives a lower bound.
          const Vec p = T.project_intersection(r, x);
          CHECK(dot(p, x) <= v + 1e-9);
          prev = v;
        }
        CHECK(T.local_support(2.0 * T.rad(), x).value == doctest::Approx(T.support(x)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("Wolfe projection onto a square matches clipping") {
  const ConvexBody S = square_polytope(1.0), C = ConvexBody::cube(2, 1.0);
  std::mt19937_64 rng(17);
  for (int k = 0; k < 100; ++k) {
    const Vec y = random_vec(rng, 2, 3.0);
    CHECK(dist2(S.project(y), C.project(y)) <= 1e-10);
  }
}

TEST_CASE("descriptors round-trip and bad input is rejected") {
  const auto j = nlohmann::json::parse(R"({"kind":"ellipsoid","dim":3,"params":{"semi_axes":"inverse_index"}})");
  const ConvexBody E = ConvexBody::from_json(j);
  CHECK(E.semi_axes()[2] == doctest::Approx(1.0 / 3.0));
  const ConvexBody E2 = ConvexBody::from_json(E.to_json());
  CHECK(E2.semi_axes() == E.semi_axes());
  CHECK(ConvexBody::from_json(nlohmann::json::parse(R"({"kind":"l1","dim":4})")).radius() == 1.0);
  CHECK_THROWS_AS(ConvexBody::from_json(nlohmann::json::parse(R"({"kind":"torus","dim":2})")), ConfigError);
  CHECK_THROWS_AS(ConvexBody::from_json(nlohmann::json::parse(R"({"kind":"ball","dim":2,"params":{"radius":-1}})")),
                  ConfigError);
  CHECK_THROWS_AS(ConvexBody::from_json(nlohmann::json::parse(R"({"kind":"ball"})")), ConfigError);
  CHECK_THROWS_AS(ConvexBody::ball(3).support(Vec{1.0, 2.0}), ConfigError);
  CHECK_THROWS_AS(ConvexBody::polytope({{1.0, 1.0}, {2.0, 1.0}, {1.0, 2.0}}), ConfigError);
  CHECK_THROWS_AS(ConvexBody::polytope({{1.0, 0.0, 0.0, 0.0}}), ConfigError);
  CHECK_THROWS_AS(ConvexBody::polytope({{INFINITY, 0.0}, {-1.0, 0.0}}), ConfigError);
  CHECK_THROWS_AS(ConvexBody::ball(2).local_support(-1.0, Vec{1.0, 0.0}), ConfigError);
}
