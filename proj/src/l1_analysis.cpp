#include "gwidth/l1_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "gwidth/special.hpp"

namespace gw {

Vec project_l1(CSpan y, double radius, double* theta) {
  Vec out(y.begin(), y.end());
  if (norm1(y) <= radius) {
    if (theta) *theta = 0.0;
    return out;
  }
  Vec a(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) a[i] = std::fabs(y[i]);
  std::sort(a.begin(), a.end(), std::greater<>());
  double cum = 0.0, th = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    cum += a[k];
    const double t = (cum - radius) / static_cast<double>(k + 1);
    if (k + 1 == a.size() || a[k + 1] <= t) {
      th = t;
      break;
    }
  }
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = std::copysign(std::max(0.0, std::fabs(y[i]) - th), y[i]);
  if (theta) *theta = th;
  return out;
}

namespace {
// ∫_0^∞ t^k exp(-l t - t^2/2) dt, used where the closed forms cancel.
double tail_moment(int k, double l) {
  const double U = std::min(60.0 / l, 40.0);
  return integrate([&](double t) { return std::pow(t, k) * std::exp(-l * t - 0.5 * t * t); }, 0.0, U, 1e-14);
}
}  // namespace

double s1(double l) {
  require(l >= 0.0, "s1: lambda must be nonnegative");
  if (l < 2.0) return 2.0 * (normal_pdf(l) - l * normal_tail(l));
  return 2.0 * normal_pdf(l) * tail_moment(1, l);
}

double s2(double l) {
  require(l >= 0.0, "s2: lambda must be nonnegative");
  if (l < 2.0) return 2.0 * ((l * l + 1.0) * normal_tail(l) - l * normal_pdf(l));
  return 2.0 * normal_pdf(l) * tail_moment(2, l);
}

double lambda_star(double alpha) {
  require(alpha > 0.0 && std::isfinite(alpha), "lambda_star: alpha must be positive");
  const double target = 1.0 / alpha;
  if (s1(0.0) <= target) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (s1(hi) > target) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (s1(mid) > target ? lo : hi) = mid;
  }
  return hi;
}

ThresholdState threshold_state(double alpha) {
  ThresholdState st;
  st.alpha = alpha;
  st.lambda_star = lambda_star(alpha);
  st.s2_at_lambda_star = s2(st.lambda_star);
  st.in_regime = alpha >= 1.0 / s1(1.0);
  const double L = std::log(std::exp(1.0) * alpha);
  if (L > 0) {
    st.lambda_lower = std::sqrt(L / 7.0);
    st.lambda_upper = std::sqrt(2.0 * L);
    st.s2_lower = 1.0 / (2.0 * std::sqrt(2.0) * alpha * std::sqrt(L));
    st.s2_upper = 12.0 * std::sqrt(7.0) / (alpha * std::sqrt(L));
  }
  return st;
}

CheckReport check_lambda_star(double alpha) {
  const ThresholdState st = threshold_state(alpha);
  CheckReport rep;
  rep.name = "lambda_star";
  rep.record("alpha", alpha);
  rep.record("lambda_star", st.lambda_star);
  rep.record("s2", st.s2_at_lambda_star);
  if (!st.in_regime) {
    rep.notes.push_back("alpha below 1/S1(1): bracket not asserted");
    return rep;
  }
  rep.add("sqrt(log(e alpha)/7) <= lambda*", st.lambda_lower, st.lambda_star);
  rep.add("lambda* <= sqrt(2 log(e alpha))", st.lambda_star, st.lambda_upper);
  rep.add("S2 lower", st.s2_lower, st.s2_at_lambda_star);
  rep.add("S2 upper", st.s2_at_lambda_star, st.s2_upper);
  return rep;
}

CheckReport check_mills_bounds(double x) {
  require(x > 0.0, "mills bounds: x must be positive");
  CheckReport rep;
  rep.name = "mills";
  const double xm = x * mills_ratio(x);
  rep.record("x", x);
  rep.record("xM", xm);
  const double rel = 1e-12;
  if (x >= 1.0) {
    const double lo = x * x / (1.0 + x * x);
    const double mid = (x * x + 1.0 / (5.0 * x * x)) / (1.0 + x * x);
    rep.add("x^2/(1+x^2) <= refined", lo, mid);
    rep.add("refined <= xM", mid, xm, rel);
  }
  rep.add("xM <= (x^2+2)/(x^2+3)", xm, (x * x + 2.0) / (x * x + 3.0), rel);
  rep.add("(x^2+2)/(x^2+3) <= 1", (x * x + 2.0) / (x * x + 3.0), 1.0);
  return rep;
}

CheckReport check_s_brackets(double l) {
  require(l >= 1.0 && l <= 8.0, "S brackets: lambda must lie in [1, 8]");
  CheckReport rep;
  rep.name = "s_brackets";
  const double phi = normal_pdf(l);
  const double a = s1(l), b = s2(l);
  rep.add("S1 >= phi/(2 l^2)", 0.5 * phi / (l * l), a);
  rep.add("S1 <= 2 phi/l^2", a, 2.0 * phi / (l * l));
  rep.add("S2 >= (2/5) phi/l^3", 0.4 * phi / (l * l * l), b);
  rep.add("S2 <= 4 phi/l^3", b, 4.0 * phi / (l * l * l));
  rep.record("S1 l^2/phi", a * l * l / phi);
  rep.record("S2 l^3/phi", b * l * l * l / phi);
  return rep;
}

double r_profile(double sigma, int d) {
  require(sigma >= 0.0 && d >= 1, "r_profile: need sigma >= 0 and d >= 1");
  const double e = std::exp(1.0);
  if (sigma <= 1.0 / d) return sigma * sigma * d;
  const double L = std::log(e * d);
  if (sigma >= std::sqrt(L)) return 1.0;
  return sigma / std::sqrt(std::log(e * d * sigma));
}

double empirical_threshold(CSpan xi, double sigma) {
  const double d = static_cast<double>(xi.size());
  const double target = 1.0 / (sigma * d);
  auto S = [&](double l) {
    double s = 0.0;
    for (double v : xi) s += std::max(0.0, std::fabs(v) - l);
    return s / d;
  };
  if (S(0.0) <= target) return 0.0;
  double lo = 0.0, hi = norm_inf(xi);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (S(mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double threshold_characterization_error(CSpan xi, double sigma) {
  const Vec p = project_l1(scaled(xi, sigma), 1.0);
  const double lh = empirical_threshold(xi, sigma);
  double err = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const double q = sigma * std::copysign(std::max(0.0, std::fabs(xi[i]) - lh), xi[i]);
    err = std::max(err, std::fabs(p[i] - q));
  }
  return err;
}

std::vector<MediumSigmaRow> verify_medium_sigma(const std::vector<int>& ds, int sigmas_per_d, std::uint64_t seed,
                                                std::size_t entry_budget, std::size_t max_samples) {
  require(sigmas_per_d >= 2, "verify_medium_sigma: need at least two sigma values");
  std::vector<MediumSigmaRow> rows;
  const double e = std::exp(1.0);
  for (int d : ds) {
    require(d >= 2, "verify_medium_sigma: d must be at least 2");
    const std::size_t n = std::clamp<std::size_t>(entry_budget / d, 256, max_samples);
    GaussianSampleSet s(d, n, seed + static_cast<std::uint64_t>(d));
    const ConvexBody T = ConvexBody::l1(d);
    const double lo = std::log(1.0 / d), hi = std::log(std::sqrt(std::log(e * d)));
    for (int k = 0; k < sigmas_per_d; ++k) {
      MediumSigmaRow row;
      row.d = d;
      row.sigma = std::exp(lo + (hi - lo) * k / (sigmas_per_d - 1));
      row.n = n;
      const MCEstimate m = proj_second_moment(T, row.sigma, s);
      row.second_moment = m.value;
      row.se = m.se;
      row.profile = r_profile(row.sigma, d);
      row.ratio = m.value / row.profile;
      row.bound = 205584.0 * row.sigma / std::sqrt(std::log(e * d * row.sigma));
      double err = 0.0;
      for (std::size_t i = 0; i < std::min<std::size_t>(n, 64); ++i)
        err = std::max(err, threshold_characterization_error(s.row(i), row.sigma));
      row.characterization_err = err;
      row.holds = row.second_moment <= row.bound + 3.0 * row.se && err <= 1e-10 * std::max(1.0, row.sigma);
      rows.push_back(row);
    }
  }
  return rows;
}

double width_from_projection(int d) {
  require(d >= 1, "width_from_projection: d must be positive");
  const double L = std::log(std::exp(1.0) * d);
  const double U = std::log(std::exp(1.0) * d * std::sqrt(L));
  return 1.0 + 1.0 + 2.0 * (std::sqrt(U) - 1.0) + 1.0 / std::sqrt(L);
}

double l1_width(int d) {
  require(d >= 1, "l1_width: d must be positive");
  auto f = [&](double t) {
    const double c = std::erfc(t / std::sqrt(2.0));  // 1 - erf
    return -std::expm1(d * std::log1p(-c));
  };
  const double U = std::sqrt(2.0 * std::log(static_cast<double>(d)) + 80.0);
  double s = integrate(f, 0.0, 1.0, 1e-14) + integrate(f, 1.0, U, 1e-14);
  return s;
}

}  // namespace gw
