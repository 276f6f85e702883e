#include "gwidth/gsm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "gwidth/polytope.hpp"
#include "gwidth/special.hpp"

namespace gw {

namespace {

Vec observe(CSpan theta, double sigma, CSpan g) {
  Vec y(theta.begin(), theta.end());
  for (std::size_t j = 0; j < y.size(); ++j) y[j] += sigma * g[j];
  return y;
}

void check_theta(const ConvexBody& T, CSpan theta, double sigma, const GaussianSampleSet& s) {
  require(static_cast<int>(theta.size()) == T.dim() && s.dim() == T.dim(), "gsm: dimension mismatch");
  require(sigma >= 0.0 && std::isfinite(sigma), "gsm: sigma must be nonnegative");
  require(T.contains(theta, 1e-9 * (1.0 + T.rad())), "gsm: theta must lie in T");
}

}  // namespace

MCEstimate lse_risk(const ConvexBody& T, CSpan theta, double sigma, const GaussianSampleSet& s) {
  check_theta(T, theta, sigma, s);
  return mean_estimate(parallel_map(s.size(), [&](std::size_t i) {
    const double e = dist2(T.project(observe(theta, sigma, s.row(i))), theta);
    return e * e;
  }));
}

MCEstimate lse_variance(const ConvexBody& T, CSpan theta, double sigma, const GaussianSampleSet& s) {
  check_theta(T, theta, sigma, s);
  const int d = T.dim();
  const std::size_t n = s.size();
  Vec P(n * d);
  parallel_map(n, [&](std::size_t i) {
    const Vec p = T.project(observe(theta, sigma, s.row(i)));
    std::copy(p.begin(), p.end(), P.begin() + i * d);
    return 0.0;
  });
  Vec mean(d);
  for (int j = 0; j < d; ++j) {
    Vec col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = P[i * d + j];
    mean[j] = pairwise_sum(col) / static_cast<double>(n);
  }
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) {
    double q = 0.0;
    for (int j = 0; j < d; ++j) q += (P[i * d + j] - mean[j]) * (P[i * d + j] - mean[j]);
    v[i] = q;
  }
  return mean_estimate(v);
}

std::vector<Vec> theta_grid(const ConvexBody& T) {
  const int d = T.dim();
  std::vector<Vec> ext;
  if (T.kind() == BodyKind::Polytope) {
    const auto& V = T.poly().vertices();
    for (std::size_t k = 0; k < std::min<std::size_t>(V.size(), 6); ++k) ext.push_back(V[k]);
  } else {
    auto boundary = [&](Vec u) {
      double lo = 0.0, hi = 1.0;
      const double R = T.rad() / norm2(u);
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (T.contains(gw::scaled(u, mid * R), 0.0) ? lo : hi) = mid;
      }
      return gw::scaled(u, lo * R);
    };
    for (int i = 0; i < std::min(d, 3); ++i) {
      Vec e(d, 0.0);
      e[i] = 1.0;
      ext.push_back(boundary(e));
    }
    if (T.kind() == BodyKind::Cube) ext.push_back(Vec(d, T.radius()));
  }
  std::vector<Vec> grid{Vec(d, 0.0)};
  for (const Vec& x : ext) {
    grid.push_back(x);
    grid.push_back(gw::scaled(x, 0.5));
  }
  return grid;
}

nlohmann::json RiskCurve::to_json() const {
  nlohmann::json rows_j = nlohmann::json::array();
  for (const RiskRow& r : rows)
    rows_j.push_back({{"sigma", r.sigma}, {"lse_risk", r.lse_risk}, {"lse_risk_se", r.lse_risk_se},
                      {"lse_variance", r.lse_variance}, {"proj_second_moment", r.proj_second_moment},
                      {"r_sigma", r.r_sigma}});
  return {{"body", body}, {"theta", theta}, {"rows", rows_j}};
}

RiskCurve risk_curve(const ConvexBody& T, CSpan theta, const Vec& sigmas, const GaussianSampleSet& s) {
  RiskCurve c;
  c.body = T.to_json().dump();
  c.theta.assign(theta.begin(), theta.end());
  LocalWidth W(T, s);
  for (double sg : sigmas) {
    const MCEstimate risk = lse_risk(T, theta, sg, s);
    c.rows.push_back({sg, risk.value, risk.se, lse_variance(T, theta, sg, s).value,
                      proj_second_moment(T, sg, s).value, sg > 0 ? solve_r(W, sg).r : 0.0});
  }
  return c;
}

CheckReport check_lse_risk(const ConvexBody& T, const Vec& sigmas, const GaussianSampleSet& s) {
  CheckReport rep;
  rep.name = "lse_risk";
  const MCEstimate w = est_width(T, s);
  const auto grid = theta_grid(T);
  for (double sg : sigmas) {
    double worst = 0.0, worst_se = 0.0;
    for (const Vec& th : grid) {
      const MCEstimate r = lse_risk(T, th, sg, s);
      if (r.value > worst) worst = r.value, worst_se = r.se;
    }
    rep.add("sup risk <= 2 sigma w at sigma=" + std::to_string(sg), worst, 2.0 * sg * w.value,
            3.0 * std::hypot(worst_se, 2.0 * sg * w.se));
    rep.record("risk/(2 sigma w)@" + std::to_string(sg), worst / (2.0 * sg * w.value));
  }
  return rep;
}

std::vector<Vec> packing_net(const ConvexBody& T, double eps) {
  const int d = T.dim();
  require(d <= 3, "packing net: d <= 3 only");
  require(eps > 0.0 && std::isfinite(eps), "packing net: eps must be positive");
  const double R = T.rad();
  double h = eps / 8.0;
  while (std::pow(2.0 * R / h + 1.0, d) > 4e6) h *= 1.25;
  const int m = static_cast<int>(std::floor(R / h));
  // Hash cells of side eps: a conflicting net point lies in a neighbouring cell.
  std::map<std::tuple<long, long, long>, std::vector<int>> cells;
  std::vector<Vec> net;
  auto key = [&](const Vec& x, int j) { return j < d ? static_cast<long>(std::floor(x[j] / eps)) : 0L; };
  std::vector<int> idx(d, -m);
  while (true) {
    Vec x(d);
    for (int j = 0; j < d; ++j) x[j] = idx[j] * h;
    if (T.contains(x, 0.0)) {
      const long k0 = key(x, 0), k1 = key(x, 1), k2 = key(x, 2);
      bool free = true;
      for (long a = -1; a <= 1 && free; ++a)
        for (long b = (d > 1 ? -1 : 0); b <= (d > 1 ? 1 : 0) && free; ++b)
          for (long c = (d > 2 ? -1 : 0); c <= (d > 2 ? 1 : 0) && free; ++c) {
            const auto it = cells.find({k0 + a, k1 + b, k2 + c});
            if (it == cells.end()) continue;
            for (int q : it->second)
              if (dist2(net[q], x) <= eps) {
                free = false;
                break;
              }
          }
      if (free) {
        cells[{k0, k1, k2}].push_back(static_cast<int>(net.size()));
        net.push_back(x);
      }
    }
    int j = 0;
    while (j < d && ++idx[j] > m) idx[j++] = -m;
    if (j == d) break;
  }
  return net;
}

MCEstimate net_lse(const std::vector<Vec>& net, CSpan theta, double sigma, const GaussianSampleSet& s) {
  require(!net.empty(), "net LSE: empty net");
  return mean_estimate(parallel_map(s.size(), [&](std::size_t i) {
    const Vec y = observe(theta, sigma, s.row(i));
    std::size_t best = 0;
    double bd = 1e300;
    for (std::size_t k = 0; k < net.size(); ++k) {
      const double q = dist2(net[k], y);
      if (q < bd) bd = q, best = k;
    }
    const double e = dist2(net[best], theta);
    return e * e;
  }));
}

CheckReport check_net_lse(const ConvexBody& T, const EntropyProfile& cloud, double sigma, const GaussianSampleSet& s) {
  CheckReport rep;
  rep.name = "net_lse";
  require(sigma > 0.0, "net LSE: sigma must be positive");
  const Vec scales = cloud.dyadic_scales();
  double eps = -1.0;
  for (double e : scales)
    if (cloud.hloc_at(e) <= e * e / (sigma * sigma)) eps = e;
  if (eps < 0.0) {
    rep.notes.push_back("no dyadic scale satisfies the entropy precondition");
    return rep;
  }
  const auto net = packing_net(T, eps);
  double worst = 0.0, worst_se = 0.0;
  for (const Vec& th : theta_grid(T)) {
    const MCEstimate r = net_lse(net, th, sigma, s);
    if (r.value > worst) worst = r.value, worst_se = r.se;
  }
  rep.add("net risk <= 1048842 eps^2", worst, 1048842.0 * eps * eps, 3.0 * worst_se);
  rep.record("eps", eps);
  rep.record("net_size", static_cast<double>(net.size()));
  rep.record("risk/eps^2", worst / (eps * eps));
  return rep;
}

CheckReport check_chatterjee(const LocalWidth& W, double sigma, const SolverOptions& opt) {
  CheckReport rep;
  rep.name = "chatterjee";
  const FixedPoint fp = solve_r(W, sigma, opt);
  const double P = proj_second_moment(W.body(), sigma, W.samples()).value;
  const double r2 = fp.r * fp.r, s2 = sigma * sigma;
  rep.record("c_r", r2 / std::max(s2, P));
  rep.record("c_proj", P / std::max(r2, s2));
  rep.record("regime_r_ge_sigma", fp.r >= sigma ? 1.0 : 0.0);
  if (fp.r >= sigma) rep.record("r^2/E||Π||^2", r2 / P);
  return rep;
}

CheckReport check_small_sigma(const LocalWidth& W, double sigma, const SolverOptions& opt) {
  CheckReport rep;
  rep.name = "small_sigma";
  const ConvexBody& T = W.body();
  const GaussianSampleSet& s = W.samples();
  const int d = T.dim();
  const FixedPoint fp = solve_r(W, sigma, opt);
  const MCEstimate P = proj_second_moment(T, sigma, s);
  const MCEstimate q = mean_estimate(parallel_map(s.size(), [&](std::size_t i) { return norm2sq(s.row(i)); }));
  const double slack_q = 3.0 * q.se;  // sample ||g||^2 against d
  const double tol = 4.0 * opt.rel_tol;
  rep.add("T(sigma) <= sigma d/2", fp.value, sigma * d / 2, sigma * slack_q / 2 + tol * std::fabs(fp.value));
  rep.add("r^2 <= 4 sigma^2 d", fp.r * fp.r, 4 * sigma * sigma * d, 4 * sigma * sigma * slack_q + 2 * tol * fp.r * fp.r);
  rep.add("E||Π(sigma g)||^2 <= sigma^2 d", P.value, sigma * sigma * d, sigma * sigma * slack_q);
  const double inr = T.inrad();
  if (sigma <= 2 * inr / std::sqrt(d)) {
    const double se = W(fp.r).se;
    rep.add("sigma d/8 <= T(sigma)", sigma * d / 8, fp.value, 3 * se + tol * std::fabs(fp.value));
  }
  if (sigma <= inr / (2 * std::sqrt(d))) {
    rep.record("E||Π||^2/(sigma^2 d)", P.value / (sigma * sigma * d));
    rep.record("r^2/(sigma^2 d)", fp.r * fp.r / (sigma * sigma * d));
  }
  return rep;
}

CheckReport stein_check(const ConvexBody& T, double sigma, const GaussianSampleSet& s, const SteinOptions& opt) {
  require(sigma > 0.0, "stein: sigma must be positive");
  require(opt.jitter >= 1 && opt.step > 0.0, "stein: bad options");
  CheckReport rep;
  rep.name = "stein";
  const int d = T.dim();
  const std::size_t n = std::min(s.size(), opt.max_rows);
  const double h = sigma * opt.step;
  // Fixed jitter offsets, a fraction of the step, move probes off kinks.
  std::vector<Vec> jit(opt.jitter, Vec(d, 0.0));
  for (int k = 1; k < opt.jitter; ++k)
    for (int j = 0; j < d; ++j) jit[k][j] = 0.5 * h * std::sin(1.0 + 7.0 * k + 3.0 * j);
  Vec lhs(n), div(n), P(n);
  parallel_map(n, [&](std::size_t i) {
    const Vec y = gw::scaled(s.row(i), sigma);
    const Vec p = T.project(y);
    lhs[i] = dot(y, p);
    P[i] = norm2sq(p);
    double acc = 0.0;
    for (const Vec& o : jit) {
      Vec z = y;
      for (int j = 0; j < d; ++j) z[j] += o[j];
      for (int j = 0; j < d; ++j) {
        Vec a = z, b = z;
        a[j] += h;
        b[j] -= h;
        acc += (T.project(a)[j] - T.project(b)[j]) / (2 * h);
      }
    }
    div[i] = acc / opt.jitter;
    return 0.0;
  });
  const MCEstimate A = mean_estimate(lhs), D = mean_estimate(div), Pm = mean_estimate(P);
  const double B = sigma * sigma * D.value, Bse = sigma * sigma * D.se;
  const double comb = std::hypot(A.se, Bse);
  rep.add("|E<sigma g, Π> - sigma^2 E div| <= 4 se", std::fabs(A.value - B), 4.0 * comb);
  rep.add("E||Π||^2 <= sigma^2 E div", Pm.value, B, 3.0 * std::hypot(Pm.se, Bse));
  const auto [lo, hi] = std::minmax_element(div.begin(), div.end());
  rep.add("0 <= div at all probes", -*lo, 0.0, 1e-6 * d);
  rep.add("div <= d at all probes", *hi, static_cast<double>(d), 1e-6 * d);
  rep.record("E<sigma g, Π>", A.value);
  rep.record("sigma^2 E div", B);
  rep.record("combined_se", comb);
  return rep;
}

double trivial_lower(const ConvexBody& T, double sigma) {
  require(sigma >= 0.0, "trivial lower bound: sigma must be nonnegative");
  return 0.25 * std::min(sigma, T.diam());
}

CheckReport check_entropy_rates(const LocalWidth& W, const EntropyProfile& cloud, double sigma,
                                const SolverOptions& opt) {
  CheckReport rep;
  rep.name = "entropy_rates";
  const ConvexBody& T = W.body();
  const double eb = entropy_fixed_point(cloud, sigma);
  rep.record("eps_bar", eb);
  rep.record("trivial_lower", trivial_lower(T, sigma));
  if (eb <= 0.0) {
    rep.notes.push_back("eps-bar is 0 on the cloud profile");
    return rep;
  }
  double worst = 0.0, worst_se = 0.0;
  for (const Vec& th : theta_grid(T)) {
    const MCEstimate v = lse_variance(T, th, sigma, W.samples());
    if (v.value > worst) worst = v.value, worst_se = v.se;
  }
  rep.add("sup variance <= 128991 eps-bar^2", worst, 128991.0 * eb * eb, 3.0 * worst_se);
  const FixedPoint fp = solve_r(W, sigma, opt);
  const double P = proj_second_moment(T, sigma, W.samples()).value;
  rep.record("variance/eps-bar^2", worst / (eb * eb));
  rep.record("max(r^2, E||Π||^2)/eps-bar^2", std::max(fp.r * fp.r, P) / (eb * eb));
  rep.record("C1 = r/eps-bar", fp.r / eb);
  rep.record("C2 = eps-bar/r*(2 sigma)", eb / solve_r_star(W, 2 * sigma, opt));
  return rep;
}

}  // namespace gw
