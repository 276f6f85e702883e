#include "gwidth/decomposition.hpp"

#include <algorithm>
#include <cmath>

#include "gwidth/special.hpp"

namespace gw {

namespace {

double trapezoid_log(const std::vector<double>& nu, const std::vector<double>& F) {
  // Integrates f = F / nu^2 assuming a power law between neighbouring nodes,
  // which is exact in both regimes F ∝ nu^2 and F = const.
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < nu.size(); ++k) {
    const double a = nu[k], b = nu[k + 1];
    const double fa = F[k] / (a * a), fb = F[k + 1] / (b * b);
    const double L = std::log(b / a);
    if (!(fa > 0.0 && fb > 0.0)) {
      s += 0.5 * L * (fa * a + fb * b);
      continue;
    }
    // ∫_a^b fa (nu/a)^p d nu with p = log(fb/fa)/L; q = p + 1.
    const double q = std::log(fb / fa) / L + 1.0;
    const double x = q * L;
    const double rel = std::fabs(x) < 1e-8 ? 1.0 + 0.5 * x : std::expm1(x) / x;
    s += fa * a * L * rel;
  }
  return s;
}

}  // namespace

TailIntegral half_tail_integral(const TailTerm& term, double sigma, const QuadratureOptions& q) {
  require(sigma >= 0.0 && std::isfinite(sigma), "tail integral: sigma must be nonnegative");
  require(q.nodes >= 3, "tail integral: need at least 3 nodes");
  require(term.nu0 > 0.0 && term.V > term.nu0, "tail integral: need 0 < nu0 < V");
  TailIntegral out;
  const double a = sigma > 0.0 ? sigma : term.nu0;
  const double V = std::max(term.V, 10.0 * a);
  const int N = q.nodes;
  std::vector<double> nu(N), F(N);
  for (int k = 0; k < N; ++k) nu[k] = std::exp(std::log(a) + (std::log(V) - std::log(a)) * k / (N - 1));
  for (int k = 0; k < N; ++k) {
    const double lo = k == 0 ? 0.0 : F[k - 1];
    double hi = std::min(term.fmax, term.head_limit * nu[k] * nu[k]);
    if (k > 0) hi = std::min(hi, F[k - 1] * (nu[k] / nu[k - 1]) * (nu[k] / nu[k - 1]));
    F[k] = term.F(nu[k], lo, std::max(lo, hi));
  }
  double I = trapezoid_log(nu, F);
  double diff = 0.0;
  bool stable = false;
  for (int dbl = 0; dbl < q.max_doublings; ++dbl) {
    std::vector<double> nu2, F2;
    nu2.reserve(2 * nu.size());
    F2.reserve(2 * nu.size());
    for (std::size_t k = 0; k + 1 < nu.size(); ++k) {
      nu2.push_back(nu[k]);
      F2.push_back(F[k]);
      const double m = std::sqrt(nu[k] * nu[k + 1]);
      const double lo = F[k];
      const double hi = std::min(F[k + 1], F[k] * (m / nu[k]) * (m / nu[k]));
      nu2.push_back(m);
      F2.push_back(term.F(m, lo, std::max(lo, hi)));
    }
    nu2.push_back(nu.back());
    F2.push_back(F.back());
    const double I2 = trapezoid_log(nu2, F2);
    diff = std::fabs(I2 - I);
    nu = std::move(nu2);
    F = std::move(F2);
    I = I2;
    if (diff <= q.stability * std::fabs(I)) {
      stable = true;
      break;
    }
  }
  if (q.max_doublings == 0) stable = true;
  out.stable = stable;
  if (!stable && q.throw_if_unstable)
    throw NumericalError("tail integral: node doubling changed the result by more than the stability tolerance");

  if (sigma == 0.0) {
    const double lo = F.front() / nu.front();
    const double hi = std::max(lo, term.head_limit * nu.front());
    out.head = 0.5 * (lo + hi);
    out.head_halfwidth = 0.5 * (hi - lo);
  }
  {
    const double lo = F.back() / V;
    const double hi = std::max(lo, term.fmax / V);
    out.tail = 0.5 * (lo + hi);
    out.tail_halfwidth = 0.5 * (hi - lo);
  }
  out.value = 0.5 * (I + out.head + out.tail);
  out.quad_error = diff;
  out.head_halfwidth *= 0.5;
  out.tail_halfwidth *= 0.5;
  out.solver_error = 0.5 * term.solver_rel * I;
  out.nodes = static_cast<int>(nu.size());
  out.nu = std::move(nu);
  out.F = std::move(F);
  return out;
}

namespace {

TailTerm base_term(const ConvexBody& T, const QuadratureOptions& q) {
  TailTerm s;
  s.fmax = T.rad() * T.rad();
  const double ir = std::max(T.inrad(), 1e-3 * T.rad());
  s.nu0 = q.nu0_factor * ir / std::sqrt(static_cast<double>(T.dim()));
  s.V = q.upper_factor * T.rad();
  return s;
}

}  // namespace

TailIntegral integrate_r_term(const LocalWidth& W, double sigma, const QuadratureOptions& q, const SolverOptions& opt) {
  TailTerm term = base_term(W.body(), q);
  const double m = W.mean_norm();
  term.head_limit = m * m;
  const double slack = 2.0 * opt.rel_tol;
  term.F = [&](double nu, double lo, double hi) {
    const FixedPoint fp = solve_r(W, nu, opt, std::sqrt(lo) * (1.0 - slack), std::sqrt(hi) * (1.0 + slack));
    return fp.r * fp.r;
  };
  term.solver_rel = 2.0 * opt.rel_tol;
  return half_tail_integral(term, sigma, q);
}

TailIntegral integrate_r_term(const std::function<double(double)>& r_of_nu, const ConvexBody& T, double head_limit,
                              double sigma, const QuadratureOptions& q) {
  TailTerm term = base_term(T, q);
  term.head_limit = head_limit;
  term.F = [&](double nu, double, double) {
    const double r = r_of_nu(nu);
    return r * r;
  };
  return half_tail_integral(term, sigma, q);
}

TailIntegral integrate_proj_term(const ConvexBody& T, const GaussianSampleSet& s, double sigma,
                                 const QuadratureOptions& q) {
  TailTerm term = base_term(T, q);
  term.head_limit = mean_estimate(parallel_map(s.size(), [&](std::size_t i) { return norm2sq(s.row(i)); })).value;
  term.F = [&](double nu, double, double) { return proj_second_moment(T, nu, s).value; };
  return half_tail_integral(term, sigma, q);
}

DecompositionResult verify_fixed_point_decomposition(const LocalWidth& W, double sigma, const QuadratureOptions& q,
                                                     const SolverOptions& opt) {
  DecompositionResult res;
  res.kind = "fixed_point";
  res.sigma = sigma;
  res.width = est_width(W.body(), W.samples());
  if (sigma > 0.0) {
    const FixedPoint fp = solve_r(W, sigma, opt);
    res.first = fp.value;
    res.first_se = W(fp.r).se;
  }
  res.second = integrate_r_term(W, sigma, q, opt);
  res.residual = res.width.value - res.first - res.second.value;
  const double se = std::sqrt(res.width.se * res.width.se + res.first_se * res.first_se);
  res.tolerance = 3.0 * (se + res.second.error());
  res.holds = std::fabs(res.residual) <= res.tolerance;
  return res;
}

DecompositionResult verify_projection_decomposition(const ConvexBody& T, const GaussianSampleSet& s, double sigma,
                                                    const QuadratureOptions& q) {
  DecompositionResult res;
  res.kind = "projection";
  res.sigma = sigma;
  res.width = est_width(T, s);
  if (sigma > 0.0) {
    const MCEstimate p = penalized_width(T, sigma, s);
    res.first = p.value;
    res.first_se = p.se;
  }
  res.second = integrate_proj_term(T, s, sigma, q);
  res.residual = res.width.value - res.first - res.second.value;
  const double se = std::sqrt(res.width.se * res.width.se + res.first_se * res.first_se);
  res.tolerance = 3.0 * (se + res.second.error());
  res.holds = std::fabs(res.residual) <= res.tolerance;
  return res;
}

nlohmann::json DecompositionResult::to_json() const {
  return {{"kind", kind},
          {"sigma", sigma},
          {"width", width.value},
          {"width_se", width.se},
          {"first_term", first},
          {"first_term_se", first_se},
          {"second_term", second.value},
          {"quadrature_error", second.quad_error},
          {"head_halfwidth", second.head_halfwidth},
          {"tail_halfwidth", second.tail_halfwidth},
          {"solver_error", second.solver_error},
          {"nodes", second.nodes},
          {"residual", residual},
          {"tolerance", tolerance},
          {"holds", holds}};
}

PointwiseResult pointwise_identity(const ConvexBody& T, CSpan x, double sigma) {
  require(sigma >= 0.0 && std::isfinite(sigma), "pointwise identity: sigma must be nonnegative");
  PointwiseResult r;
  r.h = T.support(x);
  r.h_sigma = sigma > 0.0 ? penalized_support(T, sigma, x) : 0.0;
  // With nu = c / s: ∫_c^∞ ||Π(nu x)||^2 / nu^2 d nu = ∫_0^1 ||Π(c x / s)||^2 / c ds.
  auto tail_from = [&](double c, double* err) {
    return integrate([&](double s) { return norm2sq(T.project(scaled(x, c / s))) / c; }, 0.0, 1.0, 1e-11, err);
  };
  double e1 = 0.0, e2 = 0.0, I = 0.0;
  if (sigma > 0.0) {
    I = tail_from(sigma, &e1);
  } else {
    I = integrate([&](double nu) { return nu > 0 ? norm2sq(T.project(scaled(x, nu))) / (nu * nu) : norm2sq(x); },
                  0.0, 1.0, 1e-11, &e2) +
        tail_from(1.0, &e1);
  }
  r.integral = 0.5 * I;
  r.quad_error = 0.5 * (e1 + e2);
  r.residual = r.h - r.h_sigma - r.integral;
  r.holds = std::fabs(r.residual) <= 1e-3 * (1.0 + std::fabs(r.h));
  return r;
}

}  // namespace gw
