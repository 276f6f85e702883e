#include <doctest.h>

#include <cmath>
#include <random>

#include "gwidth/decomposition.hpp"
#include "gwidth/special.hpp"

using namespace gw;

TEST_CASE("pointwise identity for the unit disc") {
  const ConvexBody B = ConvexBody::ball(2, 1.0);
  const PointwiseResult r = pointwise_identity(B, Vec{3.0, 4.0}, 1.0);
  CHECK(r.h == doctest::Approx(5.0));
  CHECK(r.h_sigma == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(r.integral == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.holds);
}

TEST_CASE("pointwise identity across bodies") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> N;
  const std::vector<ConvexBody> bodies{ConvexBody::ball(3, 1.5), ConvexBody::l1(5), ConvexBody::ellipsoid({2.0, 1.0, 0.3}),
                                       ConvexBody::cube(4, 0.5),
                                       ConvexBody::polytope({{1, 0}, {0, 1}, {-1, -1}})};
  for (const auto& T : bodies)
    for (int k = 0; k < 8; ++k) {
      Vec x(T.dim());
      for (double& v : x) v = N(rng);
      for (double sigma : {0.0, 0.1, 1.0, 10.0}) {
        const PointwiseResult r = pointwise_identity(T, x, sigma);
        // Kinks of the projection path limit adaptive quadrature to ~1e-6 on polytopes.
        CHECK_MESSAGE(std::fabs(r.residual) <= 1e-5 * (1 + r.h), T.name() << " sigma=" << sigma << " res=" << r.residual);
      }
    }
}

TEST_CASE("r-term quadrature against the closed-form ball radius") {
  const ConvexBody B = ConvexBody::ball(2, 1.0);
  const double E = std::sqrt(M_PI / 2);
  auto r = [&](double nu) { return std::min(nu * E, 1.0); };
  const TailIntegral I = integrate_r_term(r, B, E * E, 0.0, {});
  CHECK(I.value == doctest::Approx(E).epsilon(5e-3));
  CHECK(std::fabs(I.value - E) <= I.error() + 1e-12);
  // From sigma > 1/E the integrand is 1/nu^2 exactly.
  const TailIntegral J = integrate_r_term(r, B, E * E, 2.0, {});
  CHECK(J.value == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("both decompositions close on common random numbers") {
  GaussianSampleSet s(8, 4000, 7);
  const ConvexBody T = ConvexBody::l1(8);
  LocalWidth W(T, s);
  for (double sigma : {0.0, 0.1, 1.0}) {
    const DecompositionResult a = verify_fixed_point_decomposition(W, sigma);
    CHECK_MESSAGE(a.holds, a.to_json().dump());
    CHECK(std::fabs(a.residual) <= 5e-3 * a.width.value);
    const DecompositionResult b = verify_projection_decomposition(T, s, sigma);
    CHECK_MESSAGE(b.holds, b.to_json().dump());
    CHECK(std::fabs(b.residual) <= 5e-3 * b.width.value);
  }
}

TEST_CASE("ball width from the projection term") {
  GaussianSampleSet s(2, 20000, 3);
  const ConvexBody B = ConvexBody::ball(2, 1.0);
  const DecompositionResult d = verify_projection_decomposition(B, s, 0.0);
  CHECK(d.second.value == doctest::Approx(std::sqrt(M_PI / 2)).epsilon(5e-3));
  CHECK(d.holds);
}
