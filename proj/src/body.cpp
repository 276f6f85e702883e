#include "gwidth/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gwidth/l1_analysis.hpp"
#include "gwidth/polytope.hpp"

namespace gw {

std::string to_string(BodyKind k) {
  switch (k) {
    case BodyKind::Ball: return "ball";
    case BodyKind::L1: return "l1";
    case BodyKind::Ellipsoid: return "ellipsoid";
    case BodyKind::Cube: return "cube";
    case BodyKind::Polytope: return "polytope";
  }
  return "?";
}

namespace detail {

namespace {

// q(theta) = ||(a - theta)_+||_1 / ||(a - theta)_+||_2 with k active coordinates.
double ratio_at(const double* s1, const double* s2, int k, double theta) {
  const double l1 = s1[k] - k * theta;
  const double l2sq = std::max(0.0, s2[k] - 2.0 * theta * s1[k] + k * theta * theta);
  return l1 / std::sqrt(l2sq);
}

}  // namespace

double l1_ball_local_sorted(const double* a, const double* s1, const double* s2, int d, double rho, double r,
                            double* theta_out, int* active_case) {
  auto set = [&](double th, int c) {
    if (theta_out) *theta_out = th;
    if (active_case) *active_case = c;
  };
  if (d == 0 || a[0] <= 0.0 || r <= 0.0 || rho <= 0.0) {
    set(0.0, 0);
    return 0.0;
  }
  int m = 1;
  while (m < d && a[m] == a[0]) ++m;
  // l1 constraint only: the minimum-norm maximizer has norm rho / sqrt(m).
  if (r * r * m >= rho * rho) {
    set(a[0], 1);
    return rho * a[0];
  }
  const double l2 = std::sqrt(s2[d]);
  // Euclidean constraint only.
  if (r * s1[d] <= rho * l2) {
    set(0.0, 2);
    return r * l2;
  }
  const double c = rho / r;
  // q at theta = a[k] (k active coordinates) is nondecreasing in k.
  int lo = m, hi = d;  // q(a[m]) < c <= q(0)
  auto q_at_k = [&](int k) { return k < d ? ratio_at(s1, s2, k, a[k]) : s1[d] / l2; };
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (q_at_k(mid) >= c)
      hi = mid;
    else
      lo = mid + 1;
  }
  const int k = lo;
  const double tlo = k < d ? a[k] : 0.0;
  const double thi = a[k - 1];
  const double S1 = s1[k], S2 = s2[k], c2 = c * c;
  auto g = [&](double t) { return (S1 - k * t) * (S1 - k * t) - c2 * (S2 - 2.0 * t * S1 + k * t * t); };
  double theta = std::numeric_limits<double>::quiet_NaN();
  const double A = k * (k - c2), B = 2.0 * S1 * (c2 - k), C = S1 * S1 - c2 * S2;
  const double slack = 1e-12 * std::max(1.0, thi);
  if (std::fabs(A) > 1e-300) {
    const double disc = B * B - 4.0 * A * C;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double qq = -0.5 * (B + std::copysign(sq, B));
      const double r1 = qq / A;
      const double r2 = qq != 0.0 ? C / qq : r1;
      for (double cand : {r1, r2})
        if (cand >= tlo - slack && cand <= thi + slack) {
          theta = std::clamp(cand, tlo, thi);
          break;
        }
    }
  } else if (std::fabs(B) > 0.0) {
    const double cand = -C / B;
    if (cand >= tlo - slack && cand <= thi + slack) theta = std::clamp(cand, tlo, thi);
  }
  if (!std::isfinite(theta)) {
    double lo_t = tlo, hi_t = thi;  // g(lo) >= 0 >= g(hi)
    for (int it = 0; it < 200 && hi_t - lo_t > 1e-16 * thi; ++it) {
      const double mid = 0.5 * (lo_t + hi_t);
      if (g(mid) >= 0.0)
        lo_t = mid;
      else
        hi_t = mid;
    }
    theta = 0.5 * (lo_t + hi_t);
  }
  const double v2 = std::sqrt(std::max(0.0, S2 - 2.0 * theta * S1 + k * theta * theta));
  set(theta, 3);
  return rho * theta + r * v2;
}

void project_ellipsoid(CSpan a, CSpan y, std::span<double> out) {
  const std::size_t d = a.size();
  double q0 = 0.0;
  for (std::size_t i = 0; i < d; ++i) q0 += y[i] * y[i] / (a[i] * a[i]);
  if (q0 <= 1.0) {
    std::copy(y.begin(), y.end(), out.begin());
    return;
  }
  // t_i = a_i^2 y_i / (a_i^2 + mu); solve phi(mu) = 1/sqrt(q(mu)) - 1 = 0.
  // phi is increasing and close to linear, so Newton converges quickly; a
  // bracket keeps every step safe.
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < d; ++i) hi += a[i] * a[i] * y[i] * y[i];
  hi = std::sqrt(hi);
  double mu = 0.0;
  bool ok = false;
  for (int it = 0; it < 100; ++it) {
    double q = 0.0, dq = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double a2 = a[i] * a[i];
      const double den = a2 + mu;
      const double t = a2 * y[i] * y[i] / (den * den);
      q += t;
      dq += -2.0 * t / den;
    }
    if (std::fabs(q - 1.0) <= 1e-12) {
      ok = true;
      break;
    }
    if (q > 1.0)
      lo = mu;
    else
      hi = mu;
    const double phi = 1.0 / std::sqrt(q) - 1.0;
    const double dphi = -0.5 * dq / (q * std::sqrt(q));
    double next = mu - phi / dphi;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == mu) {
      ok = true;
      break;
    }
    mu = next;
  }
  if (!ok) {
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
      mu = 0.5 * (lo + hi);
      double q = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        const double a2 = a[i] * a[i];
        q += a2 * y[i] * y[i] / ((a2 + mu) * (a2 + mu));
      }
      (q > 1.0 ? lo : hi) = mu;
    }
    mu = 0.5 * (lo + hi);
  }
  for (std::size_t i = 0; i < d; ++i) {
    const double a2 = a[i] * a[i];
    out[i] = a2 * y[i] / (a2 + mu);
  }
}

}  // namespace detail

namespace {

struct SortedAbs {
  Vec a, s1, s2;
  explicit SortedAbs(CSpan x) : a(x.size()), s1(x.size() + 1, 0.0), s2(x.size() + 1, 0.0) {
    for (std::size_t i = 0; i < x.size(); ++i) a[i] = std::fabs(x[i]);
    std::sort(a.begin(), a.end(), std::greater<>());
    for (std::size_t i = 0; i < a.size(); ++i) {
      s1[i + 1] = s1[i] + a[i];
      s2[i + 1] = s2[i] + a[i] * a[i];
    }
  }
};

// sup over the ellipsoid ∩ rB of <x, t>. Along the two-constraint branch the
// maximizer is u / sqrt(q(u)) with u_i = x_i / (1/a_i^2 + kappa); the squared
// norm of that point is decreasing in kappa, so a bracketed Newton iteration in
// log kappa locates ||t|| = r.
LocalValue ellipsoid_local(CSpan a, double r, CSpan x) {
  const std::size_t d = a.size();
  double hx = 0.0, nx2 = 0.0, qx = 0.0, te2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double a2 = a[i] * a[i];
    hx += a2 * x[i] * x[i];
    nx2 += x[i] * x[i];
    qx += x[i] * x[i] / a2;
    te2 += a2 * a2 * x[i] * x[i];
  }
  if (nx2 == 0.0 || r <= 0.0) return {0.0, false};
  hx = std::sqrt(hx);
  if (te2 / (hx * hx) <= r * r) return {hx, false};
  if (r * r * qx <= nx2) return {r * std::sqrt(nx2), false};

  const double r2 = r * r;
  auto eval = [&](double kappa, double* rho, double* drho_ds, double* value) {
    double uu = 0.0, qu = 0.0, xu = 0.0, duu = 0.0, dqu = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double c = 1.0 / (a[i] * a[i]);
      const double den = c + kappa;
      const double u = x[i] / den;
      const double u2 = u * u;
      uu += u2;
      qu += c * u2;
      xu += x[i] * u;
      duu += -2.0 * u2 / den;
      dqu += -2.0 * c * u2 / den;
    }
    *rho = uu / qu;
    if (drho_ds) *drho_ds = kappa * (duu * qu - uu * dqu) / (qu * qu);
    if (value) *value = xu / std::sqrt(qu);
  };
  double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
  for (double ai : a) {
    cmin = std::min(cmin, 1.0 / (ai * ai));
    cmax = std::max(cmax, 1.0 / (ai * ai));
  }
  double slo = std::log(cmin) - 3.0, shi = std::log(cmax) + 3.0;
  double rho = 0.0;
  for (int k = 0; k < 60; ++k) {
    eval(std::exp(slo), &rho, nullptr, nullptr);
    if (rho > r2) break;
    slo -= 4.0;
  }
  for (int k = 0; k < 60; ++k) {
    eval(std::exp(shi), &rho, nullptr, nullptr);
    if (rho < r2) break;
    shi += 4.0;
  }
  double s = 0.5 * (slo + shi), val = 0.0, drho = 0.0;
  bool ok = false;
  for (int it = 0; it < 100; ++it) {
    eval(std::exp(s), &rho, &drho, &val);
    const double f = rho - r2;
    if (std::fabs(f) <= 1e-13 * r2) {
      ok = true;
      break;
    }
    if (f > 0)
      slo = s;
    else
      shi = s;
    double next = drho != 0.0 ? s - f / drho : 0.5 * (slo + shi);
    if (!(next > slo && next < shi)) next = 0.5 * (slo + shi);
    if (shi - slo < 1e-15 * std::max(1.0, std::fabs(s))) {
      ok = true;
      break;
    }
    s = next;
  }
  if (!ok) eval(std::exp(s), &rho, nullptr, &val);
  return {val, !ok};
}

// sup over [-s,s]^d ∩ rB of <x,t>: t = clip(x / mu, s) with ||t|| = r.
// Returns mu (0 when the cube constraint alone is active).
double cube_ball_scale(CSpan x, double s, double r, double* value) {
  Vec a(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) a[i] = std::fabs(x[i]);
  std::sort(a.begin(), a.end(), std::greater<>());
  std::size_t nnz = 0;
  double l1 = 0.0;
  while (nnz < a.size() && a[nnz] > 0.0) l1 += a[nnz++];
  if (nnz == 0) {
    *value = 0.0;
    return 0.0;
  }
  if (s * s * nnz <= r * r) {
    *value = s * l1;
    return 0.0;
  }
  Vec tail(nnz + 1, 0.0);
  for (std::size_t k = nnz; k-- > 0;) tail[k] = tail[k + 1] + a[k] * a[k];
  double head = 0.0;
  for (std::size_t k = 0; k < nnz; ++k) {
    const double rem = r * r - k * s * s;
    if (rem > 0.0) {
      const double mu = std::sqrt(tail[k] / rem);
      const bool upper_ok = a[k] <= s * mu * (1.0 + 1e-14);
      const bool lower_ok = k == 0 || a[k - 1] >= s * mu * (1.0 - 1e-14);
      if (upper_ok && lower_ok) {
        *value = s * head + tail[k] / mu;
        return mu;
      }
    }
    head += a[k];
  }
  throw NumericalError("cube_ball_scale: no consistent segment");
}

}  // namespace

ConvexBody ConvexBody::ball(int d, double radius) {
  require(d >= 1, "ball: dimension must be positive");
  require(std::isfinite(radius) && radius > 0.0, "ball: radius must be positive and finite");
  ConvexBody b;
  b.kind_ = BodyKind::Ball;
  b.d_ = d;
  b.radius_ = radius;
  b.finish();
  return b;
}

ConvexBody ConvexBody::l1(int d, double radius) {
  require(d >= 1, "l1: dimension must be positive");
  require(std::isfinite(radius) && radius > 0.0, "l1: radius must be positive and finite");
  ConvexBody b;
  b.kind_ = BodyKind::L1;
  b.d_ = d;
  b.radius_ = radius;
  b.finish();
  return b;
}

ConvexBody ConvexBody::ellipsoid(Vec semi_axes) {
  require(!semi_axes.empty(), "ellipsoid: no semi-axes");
  for (double a : semi_axes)
    require(std::isfinite(a) && a > 0.0, "ellipsoid: semi-axes must be positive and finite");
  ConvexBody b;
  b.kind_ = BodyKind::Ellipsoid;
  b.d_ = static_cast<int>(semi_axes.size());
  b.axes_ = std::move(semi_axes);
  b.finish();
  return b;
}

ConvexBody ConvexBody::cube(int d, double half_width) {
  require(d >= 1, "cube: dimension must be positive");
  require(std::isfinite(half_width) && half_width > 0.0, "cube: half-width must be positive and finite");
  ConvexBody b;
  b.kind_ = BodyKind::Cube;
  b.d_ = d;
  b.radius_ = half_width;
  b.finish();
  return b;
}

ConvexBody ConvexBody::polytope(std::vector<Vec> vertices) {
  ConvexBody b;
  b.kind_ = BodyKind::Polytope;
  b.poly_ = std::make_shared<const Polytope>(std::move(vertices));
  b.d_ = b.poly_->dim();
  Vec zero(b.d_, 0.0);
  require(dist2(b.poly_->project(zero), zero) <= 1e-9 * std::max(1.0, b.poly_->rad()),
          "polytope: the origin must belong to the hull");
  b.finish();
  return b;
}

void ConvexBody::finish() {
  const double sd = std::sqrt(static_cast<double>(d_));
  switch (kind_) {
    case BodyKind::Ball:
      rad_ = radius_;
      diam_ = 2 * radius_;
      inrad_ = radius_;
      break;
    case BodyKind::L1:
      rad_ = radius_;
      diam_ = 2 * radius_;
      inrad_ = radius_ / sd;
      break;
    case BodyKind::Ellipsoid:
      rad_ = *std::max_element(axes_.begin(), axes_.end());
      diam_ = 2 * rad_;
      inrad_ = *std::min_element(axes_.begin(), axes_.end());
      break;
    case BodyKind::Cube:
      rad_ = radius_ * sd;
      diam_ = 2 * rad_;
      inrad_ = radius_;
      break;
    case BodyKind::Polytope:
      rad_ = poly_->rad();
      diam_ = poly_->diam();
      inrad_ = poly_->inrad();
      break;
  }
}

const Polytope& ConvexBody::poly() const {
  require(kind_ == BodyKind::Polytope, "body is not a polytope");
  return *poly_;
}

std::string ConvexBody::name() const {
  std::string s = to_string(kind_) + "(d=" + std::to_string(d_) + ")";
  return s;
}

void ConvexBody::check_dim(CSpan x) const {
  if (static_cast<int>(x.size()) != d_)
    throw ConfigError("dimension mismatch: body has d=" + std::to_string(d_) + ", vector has " +
                      std::to_string(x.size()));
}

double ConvexBody::support(CSpan x) const {
  check_dim(x);
  switch (kind_) {
    case BodyKind::Ball: return radius_ * norm2(x);
    case BodyKind::L1: return radius_ * norm_inf(x);
    case BodyKind::Ellipsoid: {
      double s = 0.0;
      for (int i = 0; i < d_; ++i) s += axes_[i] * axes_[i] * x[i] * x[i];
      return std::sqrt(s);
    }
    case BodyKind::Cube: return radius_ * norm1(x);
    case BodyKind::Polytope: return poly_->support(x);
  }
  return 0.0;
}

Vec ConvexBody::project(CSpan y) const {
  check_dim(y);
  Vec out(y.begin(), y.end());
  switch (kind_) {
    case BodyKind::Ball: {
      const double n = norm2(y);
      if (n > radius_)
        for (double& v : out) v *= radius_ / n;
      break;
    }
    case BodyKind::L1: return project_l1(y, radius_);
    case BodyKind::Ellipsoid: detail::project_ellipsoid(axes_, y, out); break;
    case BodyKind::Cube:
      for (double& v : out) v = std::clamp(v, -radius_, radius_);
      break;
    case BodyKind::Polytope: return poly_->project(y);
  }
  return out;
}

Vec ConvexBody::project_intersection(double r, CSpan y) const {
  check_dim(y);
  require(r >= 0.0 && std::isfinite(r), "project_intersection: r must be a finite nonnegative number");
  if (r == 0.0) return Vec(d_, 0.0);
  switch (kind_) {
    case BodyKind::Ball: {
      const double R = std::min(r, radius_);
      Vec out(y.begin(), y.end());
      const double n = norm2(y);
      if (n > R)
        for (double& v : out) v *= R / n;
      return out;
    }
    case BodyKind::L1: {
      Vec p = project_l1(y, radius_);
      if (norm2(p) <= r) return p;
      const double ny = norm2(y);
      if (r * norm1(y) <= radius_ * ny) return gw::scaled(y, r / ny);
      SortedAbs sa(y);
      double theta = 0.0;
      int active = 0;
      detail::l1_ball_local_sorted(sa.a.data(), sa.s1.data(), sa.s2.data(), d_, radius_, r, &theta, &active);
      if (active != 3) {
        // Only reachable through rounding at ||Π_B1(y)|| ≈ r.
        const double np = norm2(p);
        for (double& c : p) c *= std::min(1.0, r / np);
        return p;
      }
      Vec v(d_);
      for (int i = 0; i < d_; ++i) v[i] = std::copysign(std::max(0.0, std::fabs(y[i]) - theta), y[i]);
      const double nv = norm2(v);
      for (double& c : v) c *= r / nv;
      return v;
    }
    case BodyKind::Cube: {
      Vec p = project(y);
      if (norm2(p) <= r) return p;
      double unused = 0.0;
      const double mu = cube_ball_scale(y, radius_, r, &unused);
      for (int i = 0; i < d_; ++i) p[i] = std::clamp(y[i] / mu, -radius_, radius_);
      return p;
    }
    case BodyKind::Ellipsoid:
    case BodyKind::Polytope: {
      // Π_{T∩rB}(y) = Π_T(s y) where s in (0,1] is the largest scale with
      // ||Π_T(s y)|| <= r; the norm is nondecreasing in s.
      Vec p = project(y);
      if (norm2(p) <= r) return p;
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (norm2(project(gw::scaled(y, mid))) <= r)
          lo = mid;
        else
          hi = mid;
      }
      Vec out = project(gw::scaled(y, lo));
      const double n = norm2(out);
      if (n > r)
        for (double& c : out) c *= r / n;
      return out;
    }
  }
  return {};
}

LocalValue ConvexBody::local_support(double r, CSpan x) const {
  check_dim(x);
  require(r >= 0.0 && std::isfinite(r), "local_support: r must be a finite nonnegative number");
  if (r == 0.0) return {0.0, false};
  switch (kind_) {
    case BodyKind::Ball: return {std::min(r, radius_) * norm2(x), false};
    case BodyKind::L1: {
      SortedAbs sa(x);
      return {detail::l1_ball_local_sorted(sa.a.data(), sa.s1.data(), sa.s2.data(), d_, radius_, r), false};
    }
    case BodyKind::Ellipsoid: return ellipsoid_local(axes_, r, x);
    case BodyKind::Cube: {
      double v = 0.0;
      cube_ball_scale(x, radius_, r, &v);
      return {v, false};
    }
    case BodyKind::Polytope: {
      // Maximizer is Π_T(eta x) for the eta with ||Π_T(eta x)|| = r, unless the
      // exposed face already has a point of norm <= r.
      if (norm2(x) == 0.0) return {0.0, false};
      if (norm2(poly_->exposed_face_min_norm(x)) <= r) return {poly_->support(x), false};
      double lo = 0.0, hi = r / norm2(x);
      int guard = 0;
      while (norm2(poly_->project(gw::scaled(x, hi))) < r && guard++ < 80) hi *= 2.0;
      if (guard >= 80) return {poly_->support(x), true};
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (norm2(poly_->project(gw::scaled(x, mid))) <= r)
          lo = mid;
        else
          hi = mid;
      }
      return {dot(x, poly_->project(gw::scaled(x, hi))), false};
    }
  }
  return {};
}

bool ConvexBody::contains(CSpan x, double tol) const {
  check_dim(x);
  const double slack = 1.0 + tol;
  switch (kind_) {
    case BodyKind::Ball: return norm2(x) <= radius_ * slack;
    case BodyKind::L1: return norm1(x) <= radius_ * slack;
    case BodyKind::Ellipsoid: {
      double q = 0.0;
      for (int i = 0; i < d_; ++i) q += x[i] * x[i] / (axes_[i] * axes_[i]);
      return q <= slack * slack;
    }
    case BodyKind::Cube: return norm_inf(x) <= radius_ * slack;
    case BodyKind::Polytope: return dist2(poly_->project(x), x) <= tol * std::max(1.0, rad_);
  }
  return false;
}

ConvexBody ConvexBody::scaled(double c) const {
  require(std::isfinite(c) && c > 0.0, "scaled: factor must be positive");
  switch (kind_) {
    case BodyKind::Ball: return ball(d_, c * radius_);
    case BodyKind::L1: return l1(d_, c * radius_);
    case BodyKind::Ellipsoid: return ellipsoid(gw::scaled(axes_, c));
    case BodyKind::Cube: return cube(d_, c * radius_);
    case BodyKind::Polytope: {
      std::vector<Vec> v = poly_->vertices();
      for (auto& p : v)
        for (double& t : p) t *= c;
      return polytope(std::move(v));
    }
  }
  return *this;
}

ConvexBody ConvexBody::from_json(const nlohmann::json& j) {
  try {
    require(j.is_object(), "body: descriptor must be an object");
    const std::string kind = j.at("kind").get<std::string>();
    const nlohmann::json params = j.value("params", nlohmann::json::object());
    auto dim = [&]() {
      require(j.contains("dim"), "body: missing dim");
      return j.at("dim").get<int>();
    };
    if (kind == "ball") return ball(dim(), params.value("radius", 1.0));
    if (kind == "l1") return l1(dim(), params.value("radius", 1.0));
    if (kind == "cube") return cube(dim(), params.value("half_width", 1.0));
    if (kind == "ellipsoid") {
      const auto& ax = params.at("semi_axes");
      Vec a;
      if (ax.is_string()) {
        const std::string rule = ax.get<std::string>();
        const int d = dim();
        require(d >= 1, "ellipsoid: dimension must be positive");
        a.resize(d);
        if (rule == "inverse_index")
          for (int i = 0; i < d; ++i) a[i] = 1.0 / (i + 1);
        else if (rule == "inverse_sqrt_index")
          for (int i = 0; i < d; ++i) a[i] = 1.0 / std::sqrt(i + 1.0);
        else if (rule == "ones")
          std::fill(a.begin(), a.end(), 1.0);
        else
          throw ConfigError("ellipsoid: unknown semi_axes rule '" + rule + "'");
      } else {
        a = ax.get<Vec>();
        if (j.contains("dim"))
          require(static_cast<int>(a.size()) == dim(), "ellipsoid: semi_axes length differs from dim");
      }
      return ellipsoid(std::move(a));
    }
    if (kind == "polytope") {
      auto v = params.at("vertices").get<std::vector<Vec>>();
      ConvexBody b = polytope(std::move(v));
      if (j.contains("dim")) require(b.dim() == dim(), "polytope: vertex dimension differs from dim");
      return b;
    }
    throw ConfigError("body: unknown or unsupported kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("body: malformed descriptor: ") + e.what());
  }
}

nlohmann::json ConvexBody::to_json() const {
  nlohmann::json j;
  j["kind"] = to_string(kind_);
  j["dim"] = d_;
  switch (kind_) {
    case BodyKind::Ball:
    case BodyKind::L1: j["params"] = {{"radius", radius_}}; break;
    case BodyKind::Cube: j["params"] = {{"half_width", radius_}}; break;
    case BodyKind::Ellipsoid: j["params"] = {{"semi_axes", axes_}}; break;
    case BodyKind::Polytope: j["params"] = {{"vertices", poly_->vertices()}}; break;
  }
  return j;
}

}  // namespace gw
