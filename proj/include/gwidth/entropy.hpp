#pragma once

#include <cstdint>
#include <vector>

#include "gwidth/body.hpp"
#include "gwidth/gaussian_mc.hpp"
#include "gwidth/report.hpp"
#include "gwidth/types.hpp"

namespace gw {

enum class PackingMode { Exact, Greedy };

// Finite point set with its distance matrix. Exact packing needs n <= 30.
class PointCloud {
 public:
  static constexpr int kMaxExact = 30;

  PointCloud(int d, Vec points, PackingMode mode = PackingMode::Exact);

  int n() const { return n_; }
  int dim() const { return d_; }
  PackingMode mode() const { return mode_; }
  CSpan point(int i) const { return CSpan(pts_.data() + i * d_, d_); }
  double dist(int i, int j) const { return dm_[i * n_ + j]; }
  double diam() const { return diam_; }
  // Sorted distinct positive pairwise distances.
  const Vec& distances() const { return dvals_; }

 private:
  int n_, d_;
  PackingMode mode_;
  Vec pts_, dm_, dvals_;
  double diam_ = 0.0;
};

// Largest subset of `subset` (bitmask) with pairwise distances > eps.
// Exact: branch and bound on the conflict graph. Greedy: farthest-point, a
// lower bound.
int max_packing(const PointCloud& c, double eps, std::uint32_t subset);
int max_packing(const PointCloud& c, double eps);
// sup over delta >= eps and centers x of M(cloud ∩ B(x, 2 delta), delta).
int local_packing(const PointCloud& c, double eps);
double local_entropy(const PointCloud& c, double eps);

// log M and log M^loc as right-continuous step functions of eps: the value on
// [breaks[k], breaks[k+1]) is h[k]; both vanish beyond the last break.
struct EntropyProfile {
  PackingMode mode = PackingMode::Exact;
  double diam = 0.0;
  Vec breaks;
  Vec h, hloc;

  double h_at(double eps) const;
  double hloc_at(double eps) const;
  // Dyadic scales diam * 2^-k, k = 0..kmax.
  Vec dyadic_scales(int kmax = 10) const;
  nlohmann::json to_json() const;
};

EntropyProfile entropy_profile(const PointCloud& c);

enum class Which { Local, Global };
// ∫_delta^diam sqrt(h(eps)) d eps, exact for the step profile.
double dudley(const EntropyProfile& p, double delta, Which which);
// sup_eps eps sqrt(h(eps)) (a supremum over each open step).
double sudakov_functional(const EntropyProfile& p, Which which);
// sup{eps : log M^loc(eps) >= eps^2/sigma^2}; 0 if the set is empty.
double entropy_fixed_point(const EntropyProfile& p, double sigma);

CheckReport check_dudley_equivalence(const EntropyProfile& p, const Vec& deltas);
CheckReport check_sudakov_equivalence(const EntropyProfile& p);
// h^loc(D 2^-k) <= h(D 2^-k) <= sum_{j=1..k} h^loc(D 2^-j), for D >= diam.
CheckReport check_dyadic(const EntropyProfile& p, double Delta, int k);
// All of the above on the dyadic grid; greedy profiles are reported, not asserted.
CheckReport check_entropy_equivalences(const EntropyProfile& p, int kmax = 10);

// w-hat(T) >= c * sup eps sqrt(log M) with the cloud profile, c = floor.
CheckReport sudakov_minoration_check(const ConvexBody& T, const PointCloud& cloud, const GaussianSampleSet& s,
                                     double floor = 0.05);

// Clouds: n Gaussian points (deterministic in seed) and a boundary + interior
// Halton cloud for a body in d <= 3.
PointCloud random_cloud(int n, int d, std::uint64_t seed, double scale = 1.0);
PointCloud body_cloud(const ConvexBody& T, int n_boundary, int n_interior);

}  // namespace gw
