#pragma once

#include <vector>

#include "gwidth/types.hpp"

namespace gw {

// Convex hull of finitely many points (d <= 3, at most 64 vertices).
class Polytope {
 public:
  static constexpr int kMaxVertices = 64;
  static constexpr int kMaxDim = 3;

  explicit Polytope(std::vector<Vec> vertices);

  int dim() const { return d_; }
  const std::vector<Vec>& vertices() const { return v_; }

  double support(CSpan x) const;
  // Wolfe's minimum-norm-point algorithm applied to the shifted vertices.
  Vec project(CSpan y) const;
  // Minimum-norm point of the face exposed by direction x.
  Vec exposed_face_min_norm(CSpan x) const;

  double rad() const;
  double diam() const;
  // Largest r with rB inside the hull; 0 if lower dimensional.
  double inrad() const;

 private:
  Vec min_norm_point(const std::vector<Vec>& pts) const;
  int d_;
  std::vector<Vec> v_;
};

}  // namespace gw
