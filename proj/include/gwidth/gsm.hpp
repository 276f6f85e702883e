#pragma once

#include <string>
#include <vector>

#include "gwidth/entropy.hpp"
#include "gwidth/fixed_points.hpp"
#include "gwidth/gaussian_mc.hpp"
#include "gwidth/report.hpp"

namespace gw {

// Y = theta + sigma g, estimator Π_T(Y).
MCEstimate lse_risk(const ConvexBody& T, CSpan theta, double sigma, const GaussianSampleSet& s);
// E||Π_T(Y) - mean Π_T(Y)||^2, the mean taken over the same samples.
MCEstimate lse_variance(const ConvexBody& T, CSpan theta, double sigma, const GaussianSampleSet& s);

// Finite stand-in for sup over theta in T: the origin, boundary points along
// the first min(d, 3) axes (vertices for polytopes), the cube corner, and
// midpoints of each of those.
std::vector<Vec> theta_grid(const ConvexBody& T);

struct RiskRow {
  double sigma, lse_risk, lse_risk_se, lse_variance, proj_second_moment, r_sigma;
};
struct RiskCurve {
  std::string body;
  Vec theta;
  std::vector<RiskRow> rows;
  nlohmann::json to_json() const;
};
RiskCurve risk_curve(const ConvexBody& T, CSpan theta, const Vec& sigmas, const GaussianSampleSet& s);

// sup over theta_grid of lse_risk <= 2 sigma w-hat + slack.
CheckReport check_lse_risk(const ConvexBody& T, const Vec& sigmas, const GaussianSampleSet& s);

// A maximal eps-packing of T drawn from a lattice of spacing eps/8
// (first-fit order); d <= 3.
std::vector<Vec> packing_net(const ConvexBody& T, double eps);
// Least squares over the net.
MCEstimate net_lse(const std::vector<Vec>& net, CSpan theta, double sigma, const GaussianSampleSet& s);
// Risk of the net LSE <= 1048842 eps^2 for eps the smallest dyadic scale of
// the cloud profile with log M^loc(eps) <= eps^2/sigma^2; constant recorded.
CheckReport check_net_lse(const ConvexBody& T, const EntropyProfile& cloud, double sigma, const GaussianSampleSet& s);

// Constants in r^2 <= c max{sigma^2, E||Π(sigma g)||^2} and the converse (recorded).
CheckReport check_chatterjee(const LocalWidth& W, double sigma, const SolverOptions& opt = {});
// T(sigma) <= sigma d/2, r^2 <= 4 sigma^2 d, E||Π(sigma g)||^2 <= sigma^2 d; the
// lower bounds in the small-sigma regimes.
CheckReport check_small_sigma(const LocalWidth& W, double sigma, const SolverOptions& opt = {});

struct SteinOptions {
  double step = 1e-4;  // relative to sigma
  int jitter = 3;
  std::size_t max_rows = 20000;
};
// E<sigma g, Π(sigma g)> = sigma^2 E div Π(sigma g) with the divergence by
// central differences; 0 <= div <= d at every probe.
CheckReport stein_check(const ConvexBody& T, double sigma, const GaussianSampleSet& s, const SteinOptions& opt = {});

double trivial_lower(const ConvexBody& T, double sigma);

// sup_theta lse_variance <= 128991 eps-bar^2, max{r^2, E||Π||^2} / eps-bar^2 and
// r(sigma)/eps-bar, eps-bar/r*(2 sigma) recorded; eps-bar from the cloud profile.
CheckReport check_entropy_rates(const LocalWidth& W, const EntropyProfile& cloud, double sigma,
                                const SolverOptions& opt = {});

}  // namespace gw
