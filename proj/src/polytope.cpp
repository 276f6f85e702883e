#include "gwidth/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gw {

namespace {

// Solve A z = b (n <= 4) by Gaussian elimination with partial pivoting.
bool solve_small(std::vector<double>& A, std::vector<double>& b, int n) {
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::fabs(A[r * n + c]) > std::fabs(A[p * n + c])) p = r;
    if (std::fabs(A[p * n + c]) < 1e-300) return false;
    if (p != c) {
      for (int k = 0; k < n; ++k) std::swap(A[c * n + k], A[p * n + k]);
      std::swap(b[c], b[p]);
    }
    for (int r = c + 1; r < n; ++r) {
      const double f = A[r * n + c] / A[c * n + c];
      for (int k = c; k < n; ++k) A[r * n + k] -= f * A[c * n + k];
      b[r] -= f * b[c];
    }
  }
  for (int c = n - 1; c >= 0; --c) {
    double s = b[c];
    for (int k = c + 1; k < n; ++k) s -= A[c * n + k] * b[k];
    b[c] = s / A[c * n + c];
  }
  return true;
}

// Barycentric weights of the affine minimum-norm point of pts[idx].
bool affine_min_norm(const std::vector<Vec>& pts, const std::vector<int>& idx, std::vector<double>& w) {
  const int m = static_cast<int>(idx.size());
  w.assign(m, 0.0);
  if (m == 1) {
    w[0] = 1.0;
    return true;
  }
  const int n = m - 1;
  const Vec& s0 = pts[idx[0]];
  std::vector<Vec> D(n, Vec(s0.size()));
  for (int i = 0; i < n; ++i)
    for (std::size_t k = 0; k < s0.size(); ++k) D[i][k] = pts[idx[i + 1]][k] - s0[k];
  std::vector<double> A(n * n), b(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A[i * n + j] = dot(D[i], D[j]);
    b[i] = -dot(D[i], s0);
  }
  if (!solve_small(A, b, n)) return false;
  double rest = 1.0;
  for (int i = 0; i < n; ++i) {
    w[i + 1] = b[i];
    rest -= b[i];
  }
  w[0] = rest;
  return true;
}

}  // namespace

Polytope::Polytope(std::vector<Vec> vertices) : v_(std::move(vertices)) {
  require(!v_.empty(), "polytope: no vertices");
  require(static_cast<int>(v_.size()) <= kMaxVertices, "polytope: more than 64 vertices");
  d_ = static_cast<int>(v_[0].size());
  require(d_ >= 1 && d_ <= kMaxDim, "polytope: dimension must be 1..3");
  for (const auto& v : v_) {
    require(static_cast<int>(v.size()) == d_, "polytope: inconsistent vertex dimension");
    for (double c : v) require(std::isfinite(c), "polytope: non-finite vertex (unbounded bodies unsupported)");
  }
}

double Polytope::support(CSpan x) const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& v : v_) m = std::max(m, dot(v, x));
  return m;
}

Vec Polytope::min_norm_point(const std::vector<Vec>& P) const {
  const int N = static_cast<int>(P.size());
  double scale = 0.0;
  for (const auto& p : P) scale = std::max(scale, norm2sq(p));
  const double eps = 1e-15 * std::max(scale, 1e-300);

  int first = 0;
  for (int i = 1; i < N; ++i)
    if (norm2sq(P[i]) < norm2sq(P[first])) first = i;
  std::vector<int> S{first};
  std::vector<double> w{1.0};
  Vec x = P[first];

  for (int major = 0; major < 1000; ++major) {
    int j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < N; ++i) {
      const double v = dot(x, P[i]);
      if (v < best) {
        best = v;
        j = i;
      }
    }
    if (norm2sq(x) - best <= 1e-15 * scale + eps) break;
    if (std::find(S.begin(), S.end(), j) != S.end()) break;
    S.push_back(j);
    w.push_back(0.0);

    for (int minor = 0; minor < 100; ++minor) {
      std::vector<double> a;
      if (!affine_min_norm(P, S, a)) {
        // Affinely dependent support set: drop the newest point.
        S.pop_back();
        w.pop_back();
        break;
      }
      bool interior = true;
      for (double ai : a)
        if (ai <= 1e-14) interior = false;
      if (interior) {
        w = a;
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] <= 1e-14 && w[i] - a[i] > 0) theta = std::min(theta, w[i] / (w[i] - a[i]));
      for (std::size_t i = 0; i < a.size(); ++i) w[i] = theta * a[i] + (1.0 - theta) * w[i];
      std::vector<int> S2;
      std::vector<double> w2;
      for (std::size_t i = 0; i < S.size(); ++i)
        if (w[i] > 1e-14) {
          S2.push_back(S[i]);
          w2.push_back(w[i]);
        }
      if (S2.empty()) {
        S2.push_back(S[0]);
        w2.push_back(1.0);
      }
      double tot = 0.0;
      for (double v : w2) tot += v;
      for (double& v : w2) v /= tot;
      S = std::move(S2);
      w = std::move(w2);
    }
    Vec nx(d_, 0.0);
    for (std::size_t i = 0; i < S.size(); ++i)
      for (int k = 0; k < d_; ++k) nx[k] += w[i] * P[S[i]][k];
    x = std::move(nx);
  }
  return x;
}

Vec Polytope::project(CSpan y) const {
  require(static_cast<int>(y.size()) == d_, "polytope: dimension mismatch");
  std::vector<Vec> P(v_.size(), Vec(d_));
  for (std::size_t i = 0; i < v_.size(); ++i)
    for (int k = 0; k < d_; ++k) P[i][k] = v_[i][k] - y[k];
  Vec x = min_norm_point(P);
  for (int k = 0; k < d_; ++k) x[k] += y[k];
  return x;
}

Vec Polytope::exposed_face_min_norm(CSpan x) const {
  const double h = support(x);
  const double tol = 1e-12 * std::max(1.0, std::fabs(h)) * std::max(1.0, rad());
  std::vector<Vec> face;
  for (const auto& v : v_)
    if (dot(v, x) >= h - tol) face.push_back(v);
  return min_norm_point(face);
}

double Polytope::rad() const {
  double m = 0.0;
  for (const auto& v : v_) m = std::max(m, norm2(v));
  return m;
}

double Polytope::diam() const {
  double m = 0.0;
  for (std::size_t i = 0; i < v_.size(); ++i)
    for (std::size_t j = i + 1; j < v_.size(); ++j) m = std::max(m, dist2(v_[i], v_[j]));
  return m;
}

double Polytope::inrad() const {
  const int n = static_cast<int>(v_.size());
  const double tol = 1e-12 * std::max(1.0, rad());
  double best = std::numeric_limits<double>::infinity();
  bool any = false;
  auto consider = [&](const Vec& normal, double c) {
    const double nn = norm2(normal);
    if (nn < 1e-14) return;
    bool below = true, above = true;
    for (const auto& v : v_) {
      const double s = dot(normal, v) - c;
      if (s > tol * nn) below = false;
      if (s < -tol * nn) above = false;
    }
    if (below && above) return;  // all points on the hyperplane
    if (below) {
      best = std::min(best, c / nn);
      any = true;
    } else if (above) {
      best = std::min(best, -c / nn);
      any = true;
    }
  };
  if (d_ == 1) {
    double lo = 0.0, hi = 0.0;
    for (const auto& v : v_) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    return std::max(0.0, std::min(-lo, hi));
  }
  if (d_ == 2) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Vec nrm{-(v_[j][1] - v_[i][1]), v_[j][0] - v_[i][0]};
        consider(nrm, dot(nrm, v_[i]));
      }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          const double a0 = v_[j][0] - v_[i][0], a1 = v_[j][1] - v_[i][1], a2 = v_[j][2] - v_[i][2];
          const double b0 = v_[k][0] - v_[i][0], b1 = v_[k][1] - v_[i][1], b2 = v_[k][2] - v_[i][2];
          Vec nrm{a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0};
          consider(nrm, dot(nrm, v_[i]));
        }
  }
  if (!any) return 0.0;
  return std::max(0.0, best);
}

}  // namespace gw
