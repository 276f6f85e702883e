#include <doctest.h>

#include <cmath>

#include "gwidth/fixed_points.hpp"
#include "gwidth/special.hpp"

using namespace gw;

TEST_CASE("ball fixed points have closed forms") {
  GaussianSampleSet s(2, 20000, 1);
  const ConvexBody B = ConvexBody::ball(2, 1.0);
  LocalWidth W(B, s);
  const double m = W.mean_norm();
  for (double sigma : {0.01, 0.1, 0.5, 1.0, 3.0}) {
    const FixedPoint fp = solve_r(W, sigma);
    CHECK(fp.r == doctest::Approx(std::min(sigma * m, 1.0)).epsilon(1e-3));
    const double rs = solve_r_star(W, sigma);
    const double expect = sigma * m <= 1.0 ? sigma * m : std::sqrt(sigma * m);
    CHECK(rs == doctest::Approx(expect).epsilon(1e-3));
  }
  // Against the population value E||g|| in d = 2.
  CHECK(solve_r(W, 0.1).r == doctest::Approx(0.1 * std::sqrt(M_PI / 2)).epsilon(0.02));
}

TEST_CASE("fixed points are monotone and the chain holds") {
  GaussianSampleSet s(16, 4000, 2);
  const ConvexBody T = ConvexBody::l1(16);
  LocalWidth W(T, s);
  double prev = 0.0, prev_ratio = 1e300;
  for (double sigma = 0.01; sigma < 20.0; sigma *= 1.7) {
    const FixedPoint fp = solve_r(W, sigma);
    CHECK(fp.converged);
    CHECK(fp.r >= prev * (1 - 2e-4));
    CHECK(fp.r / sigma <= prev_ratio * (1 + 2e-4));
    prev = fp.r;
    prev_ratio = fp.r / sigma;
    const FixedPointReport rep = check_chain(W, sigma);
    CHECK_MESSAGE(rep.chain.holds(), rep.chain.to_json().dump());
  }
}

TEST_CASE("derivative of the fixed-point functional") {
  // d/dsigma T(sigma) = r(sigma)^2 / (2 sigma^2) by the envelope theorem.
  GaussianSampleSet s(8, 4000, 3);
  const ConvexBody T = ConvexBody::ellipsoid({1.0, 0.8, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1});
  LocalWidth W(T, s);
  SolverOptions tight;
  tight.rel_tol = 1e-7;
  for (double sigma : {0.05, 0.2, 1.0}) {
    const double h = sigma * 1e-2;
    const double dT = (tau(W, sigma + h, tight) - tau(W, sigma - h, tight)) / (2 * h);
    const double r = solve_r(W, sigma, tight).r;
    CHECK(dT == doctest::Approx(r * r / (2 * sigma * sigma)).epsilon(0.02));
  }
}

TEST_CASE("small-sigma behaviour") {
  GaussianSampleSet s(4, 20000, 4);
  const ConvexBody T = ConvexBody::l1(4);
  LocalWidth W(T, s);
  const double sigma = T.inrad() / (2.0 * std::sqrt(4.0));
  CHECK(solve_r(W, sigma).r == doctest::Approx(sigma * W.mean_norm()).epsilon(1e-3));
  CHECK_THROWS_AS(solve_r(W, 0.0), ConfigError);
  CHECK_THROWS_AS(solve_r_star(W, -1.0), ConfigError);
}
