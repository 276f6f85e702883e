#include "gwidth/dykstra.hpp"

namespace gw {

DykstraResult dykstra(const Projector& proj_a, const Projector& proj_b, CSpan y, double tol, int max_sweeps) {
  const std::size_t d = y.size();
  Vec x(y.begin(), y.end()), p(d, 0.0), q(d, 0.0), z(d), buf(d);
  DykstraResult res;
  const double scale = std::max(1.0, norm2(y));
  for (int k = 0; k < max_sweeps; ++k) {
    for (std::size_t i = 0; i < d; ++i) buf[i] = x[i] + p[i];
    z = proj_a(buf);
    for (std::size_t i = 0; i < d; ++i) p[i] = buf[i] - z[i];
    for (std::size_t i = 0; i < d; ++i) buf[i] = z[i] + q[i];
    Vec xn = proj_b(buf);
    for (std::size_t i = 0; i < d; ++i) q[i] = buf[i] - xn[i];
    const double change = dist2(xn, x);
    const double gap = dist2(xn, z);
    x = std::move(xn);
    res.sweeps = k + 1;
    if (change <= tol * scale && gap <= tol * scale) {
      res.converged = true;
      break;
    }
  }
  res.x = std::move(x);
  return res;
}

}  // namespace gw
