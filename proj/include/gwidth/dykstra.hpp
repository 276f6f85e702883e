#pragma once

#include <functional>

#include "gwidth/types.hpp"

namespace gw {

using Projector = std::function<Vec(CSpan)>;

struct DykstraResult {
  Vec x;
  int sweeps = 0;
  bool converged = false;
};

// Dykstra's alternating projections onto A ∩ B.
DykstraResult dykstra(const Projector& proj_a, const Projector& proj_b, CSpan y, double tol = 1e-10,
                      int max_sweeps = 10000);

}  // namespace gw
