#include "gwidth/acceptance.hpp"

#include <algorithm>
#include <cmath>

#include "gwidth/config.hpp"
#include "gwidth/decomposition.hpp"
#include "gwidth/entropy.hpp"
#include "gwidth/fixed_points.hpp"
#include "gwidth/gsm.hpp"
#include "gwidth/intrinsic_volumes.hpp"
#include "gwidth/l1_analysis.hpp"
#include "gwidth/special.hpp"
#include "gwidth/variational.hpp"

namespace gw {

namespace {

// Tolerances and sizes of the acceptance roster.
constexpr double kPointwiseTol = 1e-3;
constexpr std::size_t kWidthSamples = 200000;
constexpr double kWidthRel = 0.02;
constexpr double kClosedFormRel = 0.005;
constexpr std::size_t kDecompSamples = 20000;
constexpr double kL1Agree = 1e-8;
constexpr double kSQuadRel = 1e-10;
constexpr double kRouteTol = 1e-8;
constexpr double kL1WidthQuad = 1e-6;
constexpr std::size_t kEntryBudget = std::size_t{1} << 22;
constexpr double kWidthLimitRel = 0.01;
constexpr double kBallSolverRel = 1e-3;
constexpr std::size_t kFixedPointSamples = 10000;
constexpr double kSudakovFloor = 0.05;
constexpr std::size_t kStandardSamples = 20000;

Vec seq(double lo, double hi, double step) {
  Vec v;
  for (int k = 0; lo + k * step <= hi + 1e-12; ++k) v.push_back(lo + k * step);
  return v;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

CheckReport c1_pointwise(std::uint64_t seed) {
  CheckReport rep;
  const std::vector<ConvexBody> bodies{ConvexBody::ball(2, 1.0), ConvexBody::ball(8, 1.0), ConvexBody::l1(2),
                                       ConvexBody::l1(8), ConvexBody::ellipsoid({1.0, 2.0, 3.0})};
  for (const ConvexBody& T : bodies) {
    GaussianSampleSet xs(T.dim(), 100, seed + T.dim());
    for (double sigma : {0.1, 1.0, 10.0}) {
      double worst = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const PointwiseResult r = pointwise_identity(T, xs.row(i), sigma);
        worst = std::max(worst, std::fabs(r.residual) / (1.0 + r.h));
      }
      rep.add(T.name() + " sigma=" + fmt(sigma) + ": max |res|/(1+h)", worst, kPointwiseTol);
    }
  }
  return rep;
}

CheckReport c2_width_sigma0(std::uint64_t seed) {
  CheckReport rep;
  const ConvexBody B = ConvexBody::ball(8, 1.0);
  GaussianSampleSet s(8, kWidthSamples, seed);
  const MCEstimate w = est_width(B, s);
  const TailIntegral I = integrate_proj_term(B, s, 0.0);
  const double comb = w.se + I.error();
  rep.add("|MC width - proj integral|", std::fabs(w.value - I.value), std::max(kWidthRel * w.value, 3.0 * comb));
  const double E = expected_gaussian_norm(8);
  const TailIntegral J = integrate_r_term([&](double nu) { return std::min(nu * E, 1.0); }, B, E * E, 0.0);
  rep.add("|closed-form r integral / E||g|| - 1|", std::fabs(J.value / E - 1.0), kClosedFormRel);
  rep.record("mc_width", w.value);
  rep.record("proj_integral", I.value);
  rep.record("r_integral", J.value);
  rep.record("E||g||", E);
  return rep;
}

CheckReport c3_decompositions(std::uint64_t seed) {
  CheckReport rep;
  Vec a(32);
  for (int i = 0; i < 32; ++i) a[i] = 1.0 / (i + 1);
  const std::vector<ConvexBody> bodies{ConvexBody::l1(16), ConvexBody::ellipsoid(a)};
  for (const ConvexBody& T : bodies) {
    GaussianSampleSet s(T.dim(), kDecompSamples, seed + T.dim());
    LocalWidth W(T, s);
    for (double sigma : {0.1, 1.0}) {
      const DecompositionResult f = verify_fixed_point_decomposition(W, sigma);
      const DecompositionResult p = verify_projection_decomposition(T, s, sigma);
      const std::string at = T.name() + " sigma=" + fmt(sigma);
      rep.add(at + " fixed-point residual", std::fabs(f.residual), f.tolerance);
      rep.add(at + " projection residual", std::fabs(p.residual), p.tolerance);
      rep.record(at + " fp rel residual", f.residual / f.width.value);
      rep.record(at + " proj rel residual", p.residual / p.width.value);
    }
  }
  return rep;
}

double dual_threshold(CSpan y, double radius) {
  auto f = [&](double t) {
    double s = 0.0;
    for (double v : y) s += std::max(0.0, std::fabs(v) - t);
    return s;
  };
  if (f(0.0) <= radius) return 0.0;
  double lo = 0.0, hi = norm_inf(y);
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double m = 0.5 * (lo + hi);
    (f(m) > radius ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

CheckReport c4_l1_projection(std::uint64_t seed) {
  CheckReport rep;
  double worst_agree = 0.0, worst_char = 0.0, worst_kkt = 0.0, worst_sum = 0.0;
  const double scales[] = {0.05, 0.3, 1.0, 4.0};
  for (int k = 0; k < 1000; ++k) {
    const int d = 1 + k % 32;
    GaussianSampleSet g(d, 1, seed + k);
    const Vec y = gw::scaled(g.row(0), scales[k % 4]);
    double th = 0.0;
    const Vec p = project_l1(y, 1.0, &th);
    const double tb = dual_threshold(y, 1.0);
    double mx = 0.0, ch = 0.0, kkt = 0.0;
    for (int j = 0; j < d; ++j) {
      const double pb = std::copysign(std::max(std::fabs(y[j]) - tb, 0.0), y[j]);
      mx = std::max(mx, std::fabs(p[j] - pb));
      // Soft threshold with the returned threshold, recomputed independently.
      const double soft = std::copysign(std::max(std::fabs(y[j]) - th, 0.0), y[j]);
      ch = std::max(ch, std::fabs(p[j] - soft));
      if (th > 0.0)
        kkt = std::max(kkt, p[j] != 0.0 ? std::fabs(std::fabs(y[j] - p[j]) - th) : std::max(0.0, std::fabs(y[j]) - th));
    }
    worst_agree = std::max(worst_agree, mx);
    worst_char = std::max(worst_char, ch);
    worst_kkt = std::max(worst_kkt, kkt);
    worst_sum = std::max(worst_sum, norm1(y) > 1.0 ? std::fabs(norm1(p) - 1.0) : std::max(0.0, th));
  }
  rep.add("max |sort - dual bisection|", worst_agree, kL1Agree);
  rep.add("max |Π(y) - soft(y, theta)|", worst_char, 1e-15);
  rep.add("max KKT violation", worst_kkt, 1e-12);
  rep.add("max | ||Π||_1 - 1 | (outside), theta (inside)", worst_sum, 1e-12);
  GaussianSampleSet xi(64, 50, seed + 5000);
  double te = 0.0;
  for (double sigma : {0.001, 0.01, 0.1, 1.0})
    for (std::size_t i = 0; i < xi.size(); ++i) te = std::max(te, threshold_characterization_error(xi.row(i), sigma));
  rep.add("empirical-threshold characterization error", te, 1e-12);
  return rep;
}

CheckReport c5_l1_moments() {
  CheckReport rep;
  double w1 = 0.0, w2 = 0.0;
  for (double l : seq(0.0, 6.0, 0.05)) {
    const double a = 2.0 * integrate([&](double x) { return (x - l) * normal_pdf(x); }, l, l + 40.0, 1e-15);
    const double b = 2.0 * integrate([&](double x) { return (x - l) * (x - l) * normal_pdf(x); }, l, l + 40.0, 1e-15);
    w1 = std::max(w1, std::fabs(s1(l) - a) / a);
    w2 = std::max(w2, std::fabs(s2(l) - b) / b);
  }
  rep.add("max rel |S1 - quadrature| on [0,6]", w1, kSQuadRel);
  rep.add("max rel |S2 - quadrature| on [0,6]", w2, kSQuadRel);
  int bad = 0;
  for (int k = 0; k <= 9000; ++k)
    if (!check_mills_bounds(1.0 + k * 1e-3).holds()) ++bad;
  rep.add("Mills bound failures on [1,10] step 1e-3", bad, 0);
  for (double alpha : {1.0 / s1(1.0), 10.0, 1e3, 1e6}) rep.merge(check_lambda_star(alpha), "alpha=" + fmt(alpha) + " ");
  return rep;
}

CheckReport c6_medium_sigma(std::uint64_t seed) {
  CheckReport rep;
  const std::vector<int> ds{16, 64, 256, 1024, 4096};
  const auto rows = verify_medium_sigma(ds, 6, seed, kEntryBudget);
  double worst = 0.0, cmax = 0.0;
  for (const auto& r : rows) {
    rep.add("d=" + std::to_string(r.d) + " sigma=" + fmt(r.sigma) + " E||Π||^2 <= 205584 sigma/sqrt(log(e d sigma))",
            r.second_moment, r.bound, 3.0 * r.se);
    worst = std::max(worst, r.second_moment / r.bound);
    cmax = std::max(cmax, r.ratio);
  }
  rep.record("max E||Π||^2 / bound", worst);
  rep.record("max E||Π||^2 / R (medium range)", cmax);
  // Whole range: 1/(10 d) .. 10 sqrt(log(e d)).
  for (int d : ds) {
    const std::size_t n = std::clamp<std::size_t>(kEntryBudget / d, 256, 20000);
    GaussianSampleSet s(d, n, seed + 77 + d);
    const ConvexBody T = ConvexBody::l1(d);
    for (double sigma : log_grid(0.1 / d, 10.0 * std::sqrt(std::log(std::exp(1.0) * d)), 9)) {
      const double P = proj_second_moment(T, sigma, s).value;
      cmax = std::max(cmax, P / r_profile(sigma, d));
    }
  }
  rep.record("C: max E||Π||^2 / R (whole range)", cmax);
  return rep;
}

CheckReport c7_crosspolytope() {
  CheckReport rep;
  for (int d : {8, 16, 32}) {
    double worst = 0.0;
    for (int i = 0; i <= d - 2; ++i) {
      double a = 0.0, b = 0.0;
      crosspolytope_ratio(i, d, 1.0, &a, &b);
      worst = std::max(worst, std::fabs(a - b) / std::max(a, b));
    }
    rep.add("d=" + std::to_string(d) + " max rel |route a - route b|", worst, kRouteTol);
  }
  for (int d = 8; d <= 256; ++d) {
    const IntrinsicVolumeProfile p = crosspolytope_profile(d);
    const CheckReport shape = check_unimodal_logconcave(p);
    if (!shape.holds() || d % 8 == 0 || d == 8) rep.merge(shape, "d=" + std::to_string(d) + " ");
    // Width by the product formula and by direct quadrature of 1 - (2 Phi - 1)^d.
    const double w = l1_width(d);
    const double q = integrate([&](double t) { return 1.0 - std::pow(2.0 * normal_cdf(t) - 1.0, d); }, 0.0, 12.0, 1e-13);
    if (std::fabs(w - q) > kL1WidthQuad * w || d % 8 == 0)
      rep.add("d=" + std::to_string(d) + " |width formula - quadrature|/w", std::fabs(w - q) / w, kL1WidthQuad);
    const CheckReport wp = check_width_peak(p, w, 2.0);
    if (!wp.holds() || d % 8 == 0) rep.merge(wp, "d=" + std::to_string(d) + " ");
    if (!shape.holds()) rep.notes.push_back("profile shape failed at d=" + std::to_string(d));
    if (!wp.holds()) rep.notes.push_back("width sandwich failed at d=" + std::to_string(d));
  }
  return rep;
}

CheckReport c8_peak_thresholds() {
  CheckReport rep;
  for (int d : {1, 2, 3, 5, 8, 16, 32, 64}) {
    for (double s : {0.25, 1.0, 3.0}) {
      rep.merge(check_peak_thresholds(cube_profile(d, s), s * d * std::sqrt(2.0 / kPi), s / d),
                "cube d=" + std::to_string(d) + " s=" + fmt(s) + " ");
      rep.merge(check_peak_thresholds(ball_profile(d, s), s * expected_gaussian_norm(d), s / d),
                "ball d=" + std::to_string(d) + " r=" + fmt(s) + " ");
    }
  }
  const std::vector<IntrinsicVolumeProfile> profiles{cube_profile(16, 1.0), ball_profile(16, 1.0), crosspolytope_profile(32)};
  for (const auto& p : profiles) {
    const Vec grid = log_grid(1e-4, 1e3, 50);
    int prev = p.d, bad = 0;
    for (double sg : grid) {
      const int i = peak_index_sigma(p, sg);
      if (i > prev) ++bad;
      prev = i;
    }
    rep.add(p.body + " i*_sigma increases on the 50-point grid (count)", bad, 0);
  }
  return rep;
}

CheckReport c9_variational(std::uint64_t seed) {
  CheckReport rep;
  for (int d : {16, 64, 256, 1024}) {
    GaussianSampleSet s(d, std::min<std::size_t>(kStandardSamples, kEntryBudget / d), seed + d);
    rep.merge(check_crosspolytope_bound(d, s), "B1^" + std::to_string(d) + " ");
  }
  struct Roster {
    const char* name;
    int d;
    bool isotropic;
  };
  const Roster rosters[] = {{"inverse_index", 32, false}, {"inverse_sqrt_index", 32, false}, {"ones", 64, true}};
  const Vec lambdas = log_grid(1e-3, 1e2, 11);
  for (const Roster& r : rosters) {
    const ConvexBody E = ConvexBody::from_json({{"kind", "ellipsoid"}, {"dim", r.d}, {"params", {{"semi_axes", r.name}}}});
    GaussianSampleSet s(r.d, kStandardSamples, seed + 100 + r.d);
    rep.merge(check_simplepb(E, s, lambdas), std::string(r.name) + " ");
    rep.merge(check_width_limit(E.semi_axes(), s, r.isotropic, kWidthLimitRel), std::string(r.name) + " ");
  }
  return rep;
}

CheckReport c10_fixed_point_chain(std::uint64_t seed) {
  CheckReport rep;
  Vec a(16);
  for (int i = 0; i < 16; ++i) a[i] = 1.0 / (i + 1);
  const std::vector<ConvexBody> bodies{ConvexBody::ball(8, 1.0), ConvexBody::l1(16), ConvexBody::ellipsoid(a)};
  const Vec sigmas = log_grid(0.01, 10.0, 7);
  for (const ConvexBody& T : bodies) {
    GaussianSampleSet s(T.dim(), kFixedPointSamples, seed + 7 * T.dim());
    LocalWidth W(T, s);
    for (double sg : sigmas) {
      const FixedPointReport fr = check_chain(W, sg);
      rep.merge(fr.chain, T.name() + " sigma=" + fmt(sg) + " ");
      if (T.kind() == BodyKind::Ball) {
        const double closed = std::min(sg * W.mean_norm(), T.radius());
        rep.add(T.name() + " sigma=" + fmt(sg) + " |r/closed form - 1|", std::fabs(fr.fp.r / closed - 1.0),
                kBallSolverRel);
      }
    }
  }
  return rep;
}

CheckReport c11_entropy(std::uint64_t seed) {
  CheckReport rep;
  int failing = 0;
  for (int k = 0; k < 50; ++k) {
    const int n = 6 + (k * 7) % 20;  // 6..25
    const int d = 1 + k % 3;
    const PointCloud c = random_cloud(n, d, seed + 1000 + k);
    const CheckReport e = check_entropy_equivalences(entropy_profile(c));
    if (!e.holds()) ++failing;
    rep.merge(e, "cloud " + std::to_string(k) + " (n=" + std::to_string(n) + ", d=" + std::to_string(d) + ") ");
  }
  rep.record("clouds violating an equivalence", failing);
  return rep;
}

CheckReport c12_sudakov(std::uint64_t seed) {
  CheckReport rep;
  GaussianSampleSet s(3, kStandardSamples, seed);
  for (const ConvexBody& T : {ConvexBody::l1(3), ConvexBody::ball(3, 1.0)}) {
    const CheckReport r = sudakov_minoration_check(T, body_cloud(T, 18, 8), s, kSudakovFloor);
    rep.merge(r, T.name() + " ");
  }
  return rep;
}

CheckReport c13_stein(std::uint64_t seed) {
  CheckReport rep;
  GaussianSampleSet s(4, kStandardSamples, seed);
  for (const ConvexBody& T : {ConvexBody::ball(4, 1.0), ConvexBody::l1(4)})
    for (double sg : {0.3, 1.0}) rep.merge(stein_check(T, sg, s), T.name() + " sigma=" + fmt(sg) + " ");
  return rep;
}

CheckReport c14_gsm(std::uint64_t seed) {
  CheckReport rep;
  for (const ConvexBody& T : {ConvexBody::ball(3, 1.0), ConvexBody::l1(3), ConvexBody::ball(2, 1.0), ConvexBody::l1(2)}) {
    GaussianSampleSet s(T.dim(), kStandardSamples, seed + T.dim());
    rep.merge(check_lse_risk(T, {0.02, 0.1, 0.3, 1.0, 3.0}, s), T.name() + " ");
    const EntropyProfile prof = entropy_profile(body_cloud(T, 18, 8));
    GaussianSampleSet t(T.dim(), 4000, seed + 50 + T.dim());
    for (double sg : {0.05, 0.1, 0.3}) {
      const CheckReport r = check_net_lse(T, prof, sg, t);
      if (r.links.empty()) {
        rep.notes.push_back(T.name() + " sigma=" + fmt(sg) + ": " + (r.notes.empty() ? "" : r.notes[0]));
        continue;
      }
      rep.merge(r, T.name() + " sigma=" + fmt(sg) + " ");
    }
  }
  return rep;
}

}  // namespace

nlohmann::json CriterionResult::to_json() const {
  nlohmann::json j = {{"id", id}, {"title", title}, {"passed", passed()}, {"report", report.to_json()}};
  if (!error.empty()) j["error"] = error;
  return j;
}

std::string criterion_title(int id) {
  static const char* titles[kCriteria] = {
      "pointwise identity",
      "width decompositions at sigma = 0 (ball, d = 8)",
      "both decompositions at sigma in {0.1, 1} (B1^16, ellipsoid 1/i)",
      "l1 projection: sort vs dual bisection, soft-threshold characterization",
      "S1/S2 closed forms, Mills bounds, lambda* bracket",
      "moderate-sigma l1 second-moment bound",
      "crosspolytope intrinsic ratios, profile shape, width sandwich",
      "peak-index thresholds and monotonicity",
      "variational dominance and ellipsoid width limit",
      "fixed-point chain and ball closed form",
      "entropy equivalences in exact mode",
      "Sudakov minoration",
      "Stein identity and divergence bounds",
      "GSM risk bounds and net LSE",
  };
  require(id >= 1 && id <= kCriteria, "acceptance: unknown criterion id");
  return titles[id - 1];
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
  CriterionResult res;
  res.id = id;
  res.title = criterion_title(id);
  const std::uint64_t seed = opt.seed + 1000003ull * id;
  try {
    switch (id) {
      case 1: res.report = c1_pointwise(seed); break;
      case 2: res.report = c2_width_sigma0(seed); break;
      case 3: res.report = c3_decompositions(seed); break;
      case 4: res.report = c4_l1_projection(seed); break;
      case 5: res.report = c5_l1_moments(); break;
      case 6: res.report = c6_medium_sigma(seed); break;
      case 7: res.report = c7_crosspolytope(); break;
      case 8: res.report = c8_peak_thresholds(); break;
      case 9: res.report = c9_variational(seed); break;
      case 10: res.report = c10_fixed_point_chain(seed); break;
      case 11: res.report = c11_entropy(seed); break;
      case 12: res.report = c12_sudakov(seed); break;
      case 13: res.report = c13_stein(seed); break;
      case 14: res.report = c14_gsm(seed); break;
    }
  } catch (const std::exception& e) {
    res.error = e.what();
  }
  res.report.name = "criterion " + std::to_string(id);
  return res;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, const std::vector<int>& ids) {
  std::vector<int> todo = ids;
  if (todo.empty())
    for (int i = 1; i <= kCriteria; ++i) todo.push_back(i);
  std::vector<CriterionResult> out;
  for (int id : todo) out.push_back(run_criterion(id, opt));
  return out;
}

}  // namespace gw
