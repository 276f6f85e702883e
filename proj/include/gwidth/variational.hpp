#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gwidth/gaussian_mc.hpp"
#include "gwidth/report.hpp"
#include "gwidth/types.hpp"

namespace gw {

enum class BoundKind { Plain, Localized, Crosspolytope };

struct VariationalBound {
  std::string body;
  BoundKind kind = BoundKind::Plain;
  double lambda = 0.0;  // 0 for the crosspolytope (no tuning)
  double value = 0.0;
  nlohmann::json to_json() const;
};

// Upper bounds on E sup_{x in T} (<x,g> - ||x||^2/2).
double ellipsoid_wills_bound(CSpan a, double lambda);
double ellipsoid_local_bound(CSpan a, double lambda);
double crosspolytope_bound(int d);

// Golden-section over log lambda in [1e-6, 1e6].
VariationalBound minimize_lambda(const std::function<double(double)>& bound, BoundKind kind,
                                 const std::string& body = "ellipsoid");
VariationalBound best_wills_bound(CSpan a);
VariationalBound best_local_bound(CSpan a);
// Bound on the penalized width at level sigma: sigma * min_lambda B(a/sigma, lambda).
double ellipsoid_sigma_bound(CSpan a, double sigma, BoundKind kind = BoundKind::Plain);

// MC penalized width (sigma = 1) against the plain bound on a lambda grid and
// at its minimizer; local bound compared and recorded.
CheckReport check_simplepb(const ConvexBody& ellipsoid, const GaussianSampleSet& s,
                           const std::vector<double>& lambdas);
CheckReport check_crosspolytope_bound(int d, const GaussianSampleSet& s);

// Width limit: sigma-rescaled bound at large sigma against sqrt(sum a_i^2),
// and MC E||a o g|| against the same value. isotropic selects whether the MC
// match is asserted (it holds only up to the Jensen gap of the roster).
CheckReport check_width_limit(CSpan a, const GaussianSampleSet& s, bool isotropic, double rel_tol = 0.01);

}  // namespace gw
