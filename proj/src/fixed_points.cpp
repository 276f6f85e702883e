#include "gwidth/fixed_points.hpp"

#include <algorithm>
#include <cmath>

#include "gwidth/special.hpp"

namespace gw {

FixedPoint solve_r(const LocalWidth& W, double sigma, const SolverOptions& opt, double hint_lo, double hint_hi) {
  require(sigma > 0.0 && std::isfinite(sigma), "solve_r: sigma must be positive");
  const ConvexBody& T = W.body();
  const double m = W.mean_norm();
  double lo = std::min(sigma * m, T.inrad());
  double hi = std::min(T.rad(), 2.0 * sigma * m);
  if (hint_lo > 0.0) lo = std::min(std::max(lo, hint_lo), hi);
  if (hint_hi > 0.0) hi = std::max(std::min(hi, hint_hi), lo);
  auto f = [&](double r) { return W.value(r) - r * r / (2.0 * sigma); };
  FixedPoint fp;
  fp.sigma = sigma;
  if (hi - lo <= opt.rel_tol * hi) {
    fp.r = 0.5 * (lo + hi);
    fp.value = f(fp.r);
  } else {
    const GoldenResult g = golden_max(f, lo, hi, opt.rel_tol, 1e-12 * T.rad(), opt.max_iter);
    fp.r = g.x;
    fp.value = g.f;
    fp.iterations = g.iterations;
    fp.converged = g.converged;
  }
  fp.capped = fp.r >= T.rad() * (1.0 - opt.rel_tol);
  return fp;
}

double solve_r_star(const LocalWidth& W, double sigma, const SolverOptions& opt) {
  require(sigma > 0.0 && std::isfinite(sigma), "solve_r_star: sigma must be positive");
  const ConvexBody& T = W.body();
  const double m = W.mean_norm();
  // omega(r) <= r m and omega(r) <= w give r* <= min(sigma m, sqrt(sigma w));
  // omega(r) = r m on [0, inrad] gives r* >= min(sigma m, inrad).
  auto g = [&](double r) { return W.value(r) - r * r / sigma; };
  double lo = std::min(sigma * m, T.inrad());
  double hi = std::max(lo, std::min(sigma * m, std::sqrt(sigma * W.width())));
  if (g(hi) >= 0.0) return hi;
  for (int it = 0; it < opt.max_iter && hi - lo > 0.1 * opt.rel_tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) >= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double tau(const LocalWidth& W, double sigma, const SolverOptions& opt) { return solve_r(W, sigma, opt).value; }

FixedPointReport check_chain(const LocalWidth& W, double sigma, const SolverOptions& opt) {
  FixedPointReport rep;
  rep.sigma = sigma;
  rep.fp = solve_r(W, sigma, opt);
  rep.fp2 = solve_r(W, 2.0 * sigma, opt);
  rep.r_star = solve_r_star(W, sigma, opt);
  rep.r_star_2 = solve_r_star(W, 2.0 * sigma, opt);
  rep.penalized = penalized_width(W.body(), sigma, W.samples());
  const double rad = W.body().rad();
  const double tol = 4.0 * opt.rel_tol;
  const double T1 = rep.fp.value, rs2 = rep.r_star * rep.r_star / sigma;
  CheckReport& c = rep.chain;
  c.name = "fixed_point_chain";
  c.add("T(sigma) <= penalized", T1, rep.penalized.value, 1e-9 * std::max(1.0, T1));
  c.add("penalized <= 140 r*^2/sigma", rep.penalized.value, 140.0 * rs2, 3.0 * rep.penalized.se);
  c.add("140 r*^2/sigma <= 280 T(sigma)", 140.0 * rs2, 280.0 * T1, tol * 280.0 * T1);
  const double mid = std::min(rep.r_star_2, rad);
  c.add("r(sigma) <= min(r*(2sigma), rad)", rep.fp.r, mid, tol * mid);
  const double top = std::min(2.0 * std::sqrt(sigma * rep.fp2.value), rad);
  c.add("min(r*(2sigma), rad) <= min(2 sqrt(sigma T(2sigma)), rad)", mid, top, tol * top);
  c.record("sigma", sigma);
  c.record("r", rep.fp.r);
  c.record("r_star", rep.r_star);
  c.record("tau", T1);
  c.record("penalized/(r*^2/sigma)", rep.penalized.value / rs2);
  c.record("tau/(r*^2/sigma)", T1 / rs2);
  if (!rep.fp.converged) c.notes.push_back("golden section hit its iteration cap");
  return rep;
}

nlohmann::json FixedPointReport::to_json() const {
  return {{"sigma", sigma},
          {"r", fp.r},
          {"tau", fp.value},
          {"r_2sigma", fp2.r},
          {"tau_2sigma", fp2.value},
          {"r_star", r_star},
          {"r_star_2sigma", r_star_2},
          {"penalized_width", penalized.value},
          {"penalized_width_se", penalized.se},
          {"chain", chain.to_json()}};
}

}  // namespace gw
