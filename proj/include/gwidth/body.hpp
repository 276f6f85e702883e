#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "gwidth/types.hpp"

namespace gw {

enum class BodyKind { Ball, L1, Ellipsoid, Cube, Polytope };

std::string to_string(BodyKind k);

struct LocalValue {
  double value = 0.0;
  bool approximate = false;  // iteration budget exhausted
};

class Polytope;

// A compact convex body in R^d containing the origin. Immutable.
//   Ball       {x : ||x||_2 <= radius}
//   L1         {x : ||x||_1 <= radius}
//   Ellipsoid  {x : sum x_i^2 / a_i^2 <= 1}, a_i > 0
//   Cube       [-radius, radius]^d
//   Polytope   convex hull of at most 64 vertices in d <= 3
class ConvexBody {
 public:
  static ConvexBody ball(int d, double radius = 1.0);
  static ConvexBody l1(int d, double radius = 1.0);
  static ConvexBody ellipsoid(Vec semi_axes);
  static ConvexBody cube(int d, double half_width = 1.0);
  static ConvexBody polytope(std::vector<Vec> vertices);

  // {"kind": "ball"|"l1"|"ellipsoid"|"cube"|"polytope", "dim": n, "params": {...}}
  static ConvexBody from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  BodyKind kind() const { return kind_; }
  int dim() const { return d_; }
  std::string name() const;

  // Ball/L1 radius, cube half-width.
  double radius() const { return radius_; }
  const Vec& semi_axes() const { return axes_; }
  const Polytope& poly() const;

  double support(CSpan x) const;
  Vec project(CSpan y) const;
  Vec project_intersection(double r, CSpan y) const;
  // sup over T ∩ rB of <x, t>.
  LocalValue local_support(double r, CSpan x) const;
  bool contains(CSpan x, double tol = 1e-9) const;

  double rad() const { return rad_; }
  double diam() const { return diam_; }
  double inrad() const { return inrad_; }

  ConvexBody scaled(double c) const;

 private:
  ConvexBody() = default;
  void check_dim(CSpan x) const;
  void finish();

  BodyKind kind_ = BodyKind::Ball;
  int d_ = 0;
  double radius_ = 1.0;
  Vec axes_;
  std::shared_ptr<const Polytope> poly_;
  double rad_ = 0.0, diam_ = 0.0, inrad_ = 0.0;
};

namespace detail {

// Intersection of the l1 ball of radius rho with the Euclidean ball of radius r,
// given a = |x| sorted in decreasing order with prefix sums s1[k] = sum_{j<k} a_j,
// s2[k] = sum_{j<k} a_j^2 (length d+1). Returns the threshold theta of the
// optimizer (t ∝ (a - theta)_+) through *theta and the support value.
double l1_ball_local_sorted(const double* a, const double* s1, const double* s2, int d, double rho,
                            double r, double* theta = nullptr, int* active_case = nullptr);

// Euclidean projection of y onto the ellipsoid with semi-axes a. Newton on the
// multiplier, started at 0, at most 100 iterations, tolerance 1e-12.
void project_ellipsoid(CSpan a, CSpan y, std::span<double> out);

}  // namespace detail

}  // namespace gw
