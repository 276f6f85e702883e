#include <doctest.h>

#include <cmath>

#include "gwidth/gsm.hpp"
#include "gwidth/special.hpp"

using namespace gw;

TEST_CASE("risk basics") {
  GaussianSampleSet s(3, 5000, 1);
  const ConvexBody B = ConvexBody::ball(3, 1.0);
  const Vec zero(3, 0.0);
  CHECK(lse_risk(B, zero, 0.0, s).value == 0.0);
  for (double sigma : {0.1, 0.5, 2.0}) {
    const MCEstimate r = lse_risk(B, zero, sigma, s);
    CHECK(r.value == proj_second_moment(B, sigma, s).value);
    CHECK(lse_variance(B, zero, sigma, s).value <= r.value);
    // E min(sigma ||g||, 1)^2 with ||g|| chi distributed (d = 3).
    auto chi3 = [](double t) { return std::sqrt(2 / M_PI) * t * t * std::exp(-t * t / 2); };
    const double exact = integrate([&](double t) { return std::pow(std::min(sigma * t, 1.0), 2) * chi3(t); }, 0, 1 / sigma) +
                         integrate([&](double t) { return chi3(t); }, 1 / sigma, 1 / sigma + 40);
    CHECK(std::fabs(r.value - exact) <= 4 * r.se + 1e-12);
  }
  const Vec outside{2.0, 0.0, 0.0};
  CHECK_THROWS_AS(lse_risk(B, outside, 1.0, s), ConfigError);
}

TEST_CASE("variance matches the projection moment at the origin") {
  GaussianSampleSet s(4, 20000, 2);
  const ConvexBody T = ConvexBody::l1(4);
  const Vec zero(4, 0.0);
  for (double sigma : {0.3, 1.0}) {
    const MCEstimate v = lse_variance(T, zero, sigma, s);
    const MCEstimate P = proj_second_moment(T, sigma, s);
    CHECK(v.value <= P.value);
    CHECK(v.value == doctest::Approx(P.value).epsilon(0.01));
  }
}

TEST_CASE("theta grid lies in the body") {
  for (const ConvexBody& T : {ConvexBody::ball(3, 2.0), ConvexBody::l1(5), ConvexBody::cube(2, 0.5),
                              ConvexBody::ellipsoid({1.0, 0.5, 0.25})}) {
    const auto g = theta_grid(T);
    CHECK(g.size() >= 3);
    for (const Vec& th : g) CHECK(T.contains(th, 1e-9));
  }
}

TEST_CASE("LSE risk bound over the theta grid") {
  const Vec sigmas{0.05, 0.3, 1.0, 3.0};
  GaussianSampleSet s(4, 4000, 3);
  CHECK(check_lse_risk(ConvexBody::ball(4, 1.0), sigmas, s).holds());
  CHECK(check_lse_risk(ConvexBody::l1(4), sigmas, s).holds());
  CHECK(check_lse_risk(ConvexBody::cube(4, 0.5), sigmas, s).holds());
}

TEST_CASE("packing nets") {
  const ConvexBody T = ConvexBody::ball(2, 1.0);
  for (double eps : {0.15, 0.4, 1.0}) {
    const auto net = packing_net(T, eps);
    for (std::size_t i = 0; i < net.size(); ++i) {
      CHECK(T.contains(net[i], 1e-12));
      for (std::size_t j = i + 1; j < net.size(); ++j) CHECK(dist2(net[i], net[j]) > eps);
    }
    // Maximal on the lattice, hence a cover up to the lattice spacing.
    GaussianSampleSet u(2, 500, 4);
    for (std::size_t k = 0; k < u.size(); ++k) {
      const Vec x = T.project(u.row(k));
      double best = 1e300;
      for (const Vec& p : net) best = std::min(best, dist2(p, x));
      CHECK(best <= eps * (1 + std::sqrt(2.0) / 8) + 1e-12);
    }
  }
  // eps >= diam: a single point.
  const auto one = packing_net(T, 2.5);
  REQUIRE(one.size() == 1);
  GaussianSampleSet s(2, 100, 5);
  const Vec th{0.5, 0.0};
  CHECK(net_lse(one, th, 0.7, s).value == doctest::Approx(std::pow(dist2(one[0], th), 2)));
}

TEST_CASE("net LSE under the entropy precondition") {
  const ConvexBody T = ConvexBody::ball(2, 1.0);
  const EntropyProfile prof = entropy_profile(body_cloud(T, 16, 10));
  GaussianSampleSet s(2, 4000, 6);
  const auto rep = check_net_lse(T, prof, 0.1, s);
  CHECK(rep.holds());
  REQUIRE(rep.recorded.count("risk/eps^2"));
  CHECK(rep.recorded.at("risk/eps^2") < 20.0);
}

TEST_CASE("small-sigma bounds") {
  for (const ConvexBody& T : {ConvexBody::ball(8, 1.0), ConvexBody::l1(8), ConvexBody::cube(6, 1.0)}) {
    GaussianSampleSet s(T.dim(), 4000, 7);
    LocalWidth W(T, s);
    for (double sigma : {0.01, 0.05, 0.3, 1.0, 5.0}) {
      const auto rep = check_small_sigma(W, sigma);
      CHECK_MESSAGE(rep.holds(), rep.to_json().dump());
    }
  }
}

TEST_CASE("Stein identity") {
  GaussianSampleSet s(4, 20000, 8);
  // A ball that is never reached: the projection is the identity.
  const auto big = stein_check(ConvexBody::ball(4, 1e6), 1.0, s);
  CHECK(big.holds());
  CHECK(big.recorded.at("sigma^2 E div") == doctest::Approx(4.0).epsilon(1e-8));
  for (double sigma : {0.3, 0.5, 1.0}) {
    CHECK(stein_check(ConvexBody::ball(4, 1.0), sigma, s).holds());
    CHECK(stein_check(ConvexBody::l1(4), sigma, s).holds());
  }
}

TEST_CASE("entropy rates and Chatterjee constants are recorded") {
  const ConvexBody T = ConvexBody::l1(3);
  GaussianSampleSet s(3, 4000, 9);
  LocalWidth W(T, s);
  const EntropyProfile prof = entropy_profile(body_cloud(T, 18, 8));
  for (double sigma : {0.1, 0.5}) {
    const auto rep = check_entropy_rates(W, prof, sigma);
    CHECK(rep.holds());
    CHECK(rep.recorded.at("eps_bar") > 0.0);
    const auto ch = check_chatterjee(W, sigma);
    CHECK(ch.recorded.at("c_r") > 0.0);
    CHECK(ch.recorded.at("c_proj") > 0.0);
  }
  CHECK(trivial_lower(T, 10.0) == doctest::Approx(0.5));
}
