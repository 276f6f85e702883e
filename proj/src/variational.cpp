#include "gwidth/variational.hpp"

#include <cmath>

#include "gwidth/special.hpp"

namespace gw {

nlohmann::json VariationalBound::to_json() const {
  const char* k = kind == BoundKind::Plain ? "plain" : kind == BoundKind::Localized ? "localized" : "crosspolytope";
  return {{"body", body}, {"kind", k}, {"lambda", lambda}, {"value", value}};
}

double ellipsoid_wills_bound(CSpan a, double lambda) {
  require(lambda > 0.0 && std::isfinite(lambda), "wills bound: lambda must be positive");
  double s = 0.0;
  for (double ai : a) s += std::log1p(ai * ai / lambda);
  return 0.5 * lambda + 0.5 * s;
}

double ellipsoid_local_bound(CSpan a, double lambda) {
  require(lambda > 0.0 && std::isfinite(lambda), "local bound: lambda must be positive");
  double s = 0.0;
  for (double ai : a) s += 4.0 * ai * ai / (ai * ai + 4.0 * lambda);
  return 2.0 * lambda + 0.5 * s;
}

double crosspolytope_bound(int d) {
  require(d >= 2, "crosspolytope bound: need d >= 2");
  const double L = std::log(static_cast<double>(d));
  const double c = 1.0 / std::sqrt(2.0) + 0.5 * kInvSqrtPi;
  return std::sqrt(2.0 * L) + 3.0 * std::log(2.0 * L) / (2.0 * std::sqrt(kPi) * std::sqrt(L)) + c / std::pow(L, 1.5);
}

VariationalBound minimize_lambda(const std::function<double(double)>& bound, BoundKind kind, const std::string& body) {
  const auto res = golden_max([&](double t) { return -bound(std::exp(t)); }, std::log(1e-6), std::log(1e6), 1e-10, 1e-10);
  VariationalBound b;
  b.body = body;
  b.kind = kind;
  b.lambda = std::exp(res.x);
  b.value = bound(b.lambda);
  return b;
}

VariationalBound best_wills_bound(CSpan a) {
  return minimize_lambda([&](double l) { return ellipsoid_wills_bound(a, l); }, BoundKind::Plain);
}

VariationalBound best_local_bound(CSpan a) {
  return minimize_lambda([&](double l) { return ellipsoid_local_bound(a, l); }, BoundKind::Localized);
}

double ellipsoid_sigma_bound(CSpan a, double sigma, BoundKind kind) {
  require(sigma > 0.0, "sigma bound: sigma must be positive");
  const Vec b = scaled(a, 1.0 / sigma);
  return sigma * (kind == BoundKind::Localized ? best_local_bound(b) : best_wills_bound(b)).value;
}

CheckReport check_simplepb(const ConvexBody& E, const GaussianSampleSet& s, const std::vector<double>& lambdas) {
  require(E.kind() == BodyKind::Ellipsoid, "simplepb: ellipsoid required");
  CheckReport rep;
  rep.name = "simplepb";
  const Vec& a = E.semi_axes();
  const MCEstimate pw = penalized_width(E, 1.0, s);
  for (double l : lambdas)
    rep.add("pen <= wills bound at lambda=" + std::to_string(l), pw.value, ellipsoid_wills_bound(a, l), 3.0 * pw.se);
  const VariationalBound bw = best_wills_bound(a), bl = best_local_bound(a);
  rep.add("pen <= min wills bound", pw.value, bw.value, 3.0 * pw.se);
  rep.add("pen <= min local bound", pw.value, bl.value, 3.0 * pw.se);
  rep.record("pen", pw.value);
  rep.record("pen_se", pw.se);
  rep.record("lambda_wills", bw.lambda);
  rep.record("min_wills", bw.value);
  rep.record("lambda_local", bl.lambda);
  rep.record("min_local", bl.value);
  rep.record("local_minus_wills", bl.value - bw.value);
  return rep;
}

CheckReport check_crosspolytope_bound(int d, const GaussianSampleSet& s) {
  CheckReport rep;
  rep.name = "crosspolytope_bound";
  const MCEstimate pw = penalized_width(ConvexBody::l1(d), 1.0, s);
  const double b = crosspolytope_bound(d);
  rep.add("pen(B1^" + std::to_string(d) + ") <= bound", pw.value, b, 3.0 * pw.se);
  rep.record("pen", pw.value);
  rep.record("bound", b);
  return rep;
}

CheckReport check_width_limit(CSpan a, const GaussianSampleSet& s, bool isotropic, double rel_tol) {
  require(static_cast<int>(a.size()) == s.dim(), "width limit: dimension mismatch");
  CheckReport rep;
  rep.name = "width_limit";
  const double target = norm2(a);
  const double sig = 1e4 * target;
  const double lim = ellipsoid_sigma_bound(a, sig);
  rep.add("|sigma bound / sqrt(sum a^2) - 1| <= tol", std::fabs(lim / target - 1.0), rel_tol);
  Vec v(s.size());
  Vec y(a.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const CSpan g = s.row(i);
    for (size_t j = 0; j < a.size(); ++j) y[j] = a[j] * g[j];
    v[i] = norm2(y);
  }
  const MCEstimate w = mean_estimate(v);
  rep.add("MC E||a o g|| <= sqrt(sum a^2)", w.value, target, 3.0 * w.se);
  if (isotropic) rep.add("|MC E||a o g|| / sqrt(sum a^2) - 1| <= tol", std::fabs(w.value / target - 1.0), rel_tol);
  rep.record("limit_ratio", lim / target);
  rep.record("mc_ratio", w.value / target);
  return rep;
}

}  // namespace gw
