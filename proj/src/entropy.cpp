#include "gwidth/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "gwidth/special.hpp"

namespace gw {

PointCloud::PointCloud(int d, Vec points, PackingMode mode) : d_(d), mode_(mode), pts_(std::move(points)) {
  require(d >= 1 && !pts_.empty() && pts_.size() % d == 0, "point cloud: need a nonempty n x d array");
  for (double v : pts_) require(std::isfinite(v), "point cloud: non-finite coordinate");
  n_ = static_cast<int>(pts_.size() / d);
  require(mode != PackingMode::Exact || n_ <= kMaxExact, "point cloud: exact packing mode needs n <= 30");
  dm_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      const double v = dist2(point(i), point(j));
      dm_[i * n_ + j] = dm_[j * n_ + i] = v;
      if (v > 0.0) dvals_.push_back(v);
      diam_ = std::max(diam_, v);
    }
  std::sort(dvals_.begin(), dvals_.end());
  dvals_.erase(std::unique(dvals_.begin(), dvals_.end()), dvals_.end());
}

namespace {

using Mask = std::uint32_t;

struct Mis {
  const std::vector<Mask>& adj;
  int best = 0;

  void run(Mask P, int cur) {
    // Vertices of degree <= 1 within P belong to some maximum independent set.
    for (bool changed = true; changed && P;) {
      changed = false;
      for (Mask q = P; q; q &= q - 1) {
        const int v = std::countr_zero(q);
        if (!(P >> v & 1u)) continue;
        if (std::popcount(adj[v] & P) <= 1) {
          P &= ~(adj[v] | (Mask{1} << v));
          ++cur;
          changed = true;
        }
      }
    }
    if (!P) {
      best = std::max(best, cur);
      return;
    }
    if (cur + greedy_colour_bound(P) <= best) return;
    int v = -1, deg = -1;
    for (Mask q = P; q; q &= q - 1) {
      const int u = std::countr_zero(q);
      const int du = std::popcount(adj[u] & P);
      if (du > deg) deg = du, v = u;
    }
    run(P & ~(adj[v] | (Mask{1} << v)), cur + 1);
    run(P & ~(Mask{1} << v), cur);
  }

  // Clique cover of P (greedy): an independent set takes at most one vertex per clique.
  int greedy_colour_bound(Mask P) const {
    int cliques = 0;
    while (P) {
      Mask cand = P;
      Mask clique = 0;
      while (cand) {
        const int v = std::countr_zero(cand);
        clique |= Mask{1} << v;
        cand &= adj[v];
      }
      P &= ~clique;
      ++cliques;
    }
    return cliques;
  }
};

int greedy_packing(const PointCloud& c, double eps, Mask subset) {
  std::vector<int> idx;
  for (int i = 0; i < c.n(); ++i)
    if (subset >> i & 1u) idx.push_back(i);
  if (idx.empty()) return 0;
  std::vector<double> gap(idx.size(), 1e300);
  std::vector<char> used(idx.size(), 0);
  int count = 0;
  std::size_t pick = 0;
  while (true) {
    used[pick] = 1;
    ++count;
    std::size_t next = idx.size();
    double far = -1.0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (used[k]) continue;
      gap[k] = std::min(gap[k], c.dist(idx[k], idx[pick]));
      if (gap[k] > far) far = gap[k], next = k;
    }
    if (next == idx.size() || far <= eps) return count;
    pick = next;
  }
}

Mask all_mask(int n) { return n == 32 ? ~Mask{0} : (Mask{1} << n) - 1; }

}  // namespace

int max_packing(const PointCloud& c, double eps, std::uint32_t subset) {
  require(eps >= 0.0, "packing: eps must be nonnegative");
  if (c.mode() == PackingMode::Greedy || c.n() > PointCloud::kMaxExact) {
    require(c.mode() == PackingMode::Greedy, "packing: exact mode refused for n > 30");
    return greedy_packing(c, eps, subset);
  }
  std::vector<Mask> adj(c.n(), 0);
  for (int i = 0; i < c.n(); ++i)
    for (int j = 0; j < c.n(); ++j)
      if (i != j && c.dist(i, j) <= eps) adj[i] |= Mask{1} << j;
  Mis m{adj};
  m.run(subset & all_mask(c.n()), 0);
  return m.best;
}

int max_packing(const PointCloud& c, double eps) { return max_packing(c, eps, all_mask(c.n())); }

namespace {

// max over centers of M(cloud ∩ B(x, 2 delta), delta) at a single delta.
int local_at(const PointCloud& c, double delta) {
  int best = 1;
  for (int x = 0; x < c.n(); ++x) {
    Mask ball = 0;
    for (int j = 0; j < c.n(); ++j)
      if (c.dist(x, j) <= 2.0 * delta) ball |= Mask{1} << j;
    if (std::popcount(ball) <= best) continue;
    best = std::max(best, max_packing(c, delta, ball));
  }
  return best;
}

Vec breakpoints(const PointCloud& c) {
  Vec b{0.0};
  for (double v : c.distances()) {
    b.push_back(v);
    b.push_back(0.5 * v);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

}  // namespace

int local_packing(const PointCloud& c, double eps) {
  require(c.n() <= 32, "local packing: at most 32 points");
  int best = local_at(c, eps);
  for (double b : breakpoints(c))
    if (b > eps) best = std::max(best, local_at(c, b));
  return best;
}

double local_entropy(const PointCloud& c, double eps) { return std::log(static_cast<double>(local_packing(c, eps))); }

EntropyProfile entropy_profile(const PointCloud& c) {
  require(c.n() <= 32, "entropy profile: at most 32 points");
  EntropyProfile p;
  p.mode = c.mode();
  p.diam = c.diam();
  p.breaks = breakpoints(c);
  const std::size_t K = p.breaks.size();
  p.h.resize(K);
  p.hloc.resize(K);
  std::vector<int> loc(K);
  for (std::size_t k = 0; k < K; ++k) {
    p.h[k] = std::log(static_cast<double>(max_packing(c, p.breaks[k])));
    loc[k] = local_at(c, p.breaks[k]);
  }
  int run = 1;
  for (std::size_t k = K; k-- > 0;) {
    run = std::max(run, loc[k]);
    p.hloc[k] = std::log(static_cast<double>(run));
  }
  return p;
}

namespace {

double step_at(const EntropyProfile& p, const Vec& v, double eps) {
  require(eps >= 0.0, "profile: eps must be nonnegative");
  if (eps >= p.diam) return 0.0;
  const auto it = std::upper_bound(p.breaks.begin(), p.breaks.end(), eps);
  return v[static_cast<std::size_t>(it - p.breaks.begin()) - 1];
}

const Vec& pick(const EntropyProfile& p, Which w) { return w == Which::Local ? p.hloc : p.h; }

double step_end(const EntropyProfile& p, std::size_t k) {
  return k + 1 < p.breaks.size() ? p.breaks[k + 1] : p.diam;
}

}  // namespace

double EntropyProfile::h_at(double eps) const { return step_at(*this, h, eps); }
double EntropyProfile::hloc_at(double eps) const { return step_at(*this, hloc, eps); }

Vec EntropyProfile::dyadic_scales(int kmax) const {
  Vec s(kmax + 1);
  for (int k = 0; k <= kmax; ++k) s[k] = std::ldexp(diam, -k);
  return s;
}

nlohmann::json EntropyProfile::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (double e : dyadic_scales()) rows.push_back({{"eps", e}, {"h", h_at(e)}, {"hloc", hloc_at(e)}});
  return {{"mode", mode == PackingMode::Exact ? "exact" : "greedy"}, {"diam", diam}, {"dyadic", rows},
          {"steps", breaks.size()}};
}

double dudley(const EntropyProfile& p, double delta, Which which) {
  require(delta >= 0.0, "dudley: delta must be nonnegative");
  const Vec& v = pick(p, which);
  double s = 0.0;
  for (std::size_t k = 0; k < p.breaks.size(); ++k) {
    const double a = std::max(p.breaks[k], delta), b = std::min(step_end(p, k), p.diam);
    if (b > a) s += (b - a) * std::sqrt(v[k]);
  }
  return s;
}

double sudakov_functional(const EntropyProfile& p, Which which) {
  const Vec& v = pick(p, which);
  double s = 0.0;
  for (std::size_t k = 0; k < p.breaks.size(); ++k) s = std::max(s, step_end(p, k) * std::sqrt(v[k]));
  return s;
}

double entropy_fixed_point(const EntropyProfile& p, double sigma) {
  require(sigma >= 0.0, "entropy fixed point: sigma must be nonnegative");
  double best = 0.0;
  for (std::size_t k = 0; k < p.breaks.size(); ++k) {
    const double reach = sigma * std::sqrt(p.hloc[k]);
    if (reach >= p.breaks[k] && p.hloc[k] > 0.0) best = std::max(best, std::min(reach, step_end(p, k)));
  }
  return best;
}

namespace {
constexpr double kRound = 1e-12;
}

CheckReport check_dudley_equivalence(const EntropyProfile& p, const Vec& deltas) {
  CheckReport rep;
  rep.name = "dudley_local_global";
  for (double d : deltas) {
    const double jl = dudley(p, d, Which::Local), jg = dudley(p, d, Which::Global);
    const double jl4 = dudley(p, d / 4, Which::Local);
    const std::string at = " at delta=" + std::to_string(d);
    rep.add("J^loc <= J" + at, jl, jg, kRound * (1 + jg));
    rep.add("J <= 4 J^loc_{delta/4}" + at, jg, 4 * jl4, kRound * (1 + jg));
  }
  return rep;
}

CheckReport check_sudakov_equivalence(const EntropyProfile& p) {
  CheckReport rep;
  rep.name = "sudakov_local_global";
  const double sl = sudakov_functional(p, Which::Local), sg = sudakov_functional(p, Which::Global);
  rep.add("Psi^loc <= Psi", sl, sg, kRound * (1 + sg));
  rep.add("Psi <= 4 Psi^loc", sg, 4 * sl, kRound * (1 + sg));
  rep.record("Psi/Psi^loc", sl > 0 ? sg / sl : 0.0);
  return rep;
}

CheckReport check_dyadic(const EntropyProfile& p, double Delta, int k) {
  require(Delta >= p.diam && k >= 1, "dyadic check: need Delta >= diam and k >= 1");
  CheckReport rep;
  rep.name = "dyadic";
  const double e = std::ldexp(Delta, -k);
  double sum = 0.0;
  for (int j = 1; j <= k; ++j) sum += p.hloc_at(std::ldexp(Delta, -j));
  const std::string at = " at k=" + std::to_string(k);
  rep.add("h^loc <= h" + at, p.hloc_at(e), p.h_at(e), kRound);
  rep.add("h <= sum h^loc" + at, p.h_at(e), sum, kRound * (1 + sum));
  return rep;
}

CheckReport check_entropy_equivalences(const EntropyProfile& p, int kmax) {
  CheckReport rep;
  rep.name = "entropy_equivalences";
  CheckReport parts;
  parts.merge(check_dudley_equivalence(p, p.dyadic_scales(kmax)), "dudley.");
  parts.merge(check_sudakov_equivalence(p), "sudakov.");
  for (int k = 1; k <= kmax; ++k) parts.merge(check_dyadic(p, p.diam, k), "dyadic.");
  // Monotonicity of both profiles and h^loc <= h pointwise on every step.
  bool mono = true, dom = true;
  for (std::size_t k = 0; k < p.breaks.size(); ++k) {
    if (k > 0 && (p.h[k] > p.h[k - 1] || p.hloc[k] > p.hloc[k - 1])) mono = false;
    if (p.hloc[k] > p.h[k] + kRound) dom = false;
  }
  parts.add("profiles nonincreasing", mono ? 0 : 1, 0);
  parts.add("h^loc <= h on every step", dom ? 0 : 1, 0);
  if (p.mode == PackingMode::Exact) {
    rep.merge(parts);
  } else {
    for (const auto& l : parts.links)
      if (!l.holds) rep.notes.push_back("greedy (not asserted): " + l.name);
    rep.record("greedy_violations", static_cast<double>(parts.failures().size()));
  }
  return rep;
}

CheckReport sudakov_minoration_check(const ConvexBody& T, const PointCloud& cloud, const GaussianSampleSet& s,
                                     double floor) {
  CheckReport rep;
  rep.name = "sudakov_minoration";
  const EntropyProfile p = entropy_profile(cloud);
  const MCEstimate w = est_width(T, s);
  const double sg = sudakov_functional(p, Which::Global), sl = sudakov_functional(p, Which::Local);
  rep.add("c sup eps sqrt(log M) <= w", floor * sg, w.value, 3.0 * w.se);
  rep.add("c sup eps sqrt(log M^loc) <= w", floor * sl, w.value, 3.0 * w.se);
  rep.record("w", w.value);
  rep.record("c_emp", sg > 0 ? w.value / sg : 0.0);
  rep.record("c_emp_loc", sl > 0 ? w.value / sl : 0.0);
  return rep;
}

PointCloud random_cloud(int n, int d, std::uint64_t seed, double scale) {
  require(n >= 1 && d >= 1, "random cloud: need n, d >= 1");
  GaussianSampleSet g(d, n, seed);
  return PointCloud(d, gw::scaled(g.data(), scale), n <= PointCloud::kMaxExact ? PackingMode::Exact : PackingMode::Greedy);
}

namespace {

double radical_inverse(unsigned i, unsigned base) {
  double f = 1.0, r = 0.0;
  for (; i; i /= base) {
    f /= base;
    r += f * (i % base);
  }
  return r;
}

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13};

}  // namespace

PointCloud body_cloud(const ConvexBody& T, int n_boundary, int n_interior) {
  const int d = T.dim();
  require(d <= 3, "body cloud: d <= 3 only");
  require(n_boundary >= 0 && n_interior >= 0 && n_boundary + n_interior >= 1, "body cloud: need at least one point");
  const double R = T.rad();
  Vec pts;
  // Boundary: Halton directions pushed to the boundary along the ray.
  for (unsigned i = 1; static_cast<int>(pts.size()) < n_boundary * d; ++i) {
    Vec u(d);
    for (int j = 0; j < d; ++j) u[j] = normal_quantile(radical_inverse(i, kPrimes[j]));
    const double nu = norm2(u);
    if (nu == 0.0) continue;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (T.contains(gw::scaled(u, mid * R / nu), 0.0) ? lo : hi) = mid;
    }
    const Vec x = gw::scaled(u, lo * R / nu);
    pts.insert(pts.end(), x.begin(), x.end());
  }
  // Interior: Halton points of the bounding box that fall inside T.
  int got = 0;
  for (unsigned i = 1; got < n_interior; ++i) {
    Vec x(d);
    for (int j = 0; j < d; ++j) x[j] = R * (2.0 * radical_inverse(i, kPrimes[j]) - 1.0);
    if (!T.contains(x, 0.0)) continue;
    pts.insert(pts.end(), x.begin(), x.end());
    ++got;
  }
  const int n = n_boundary + n_interior;
  return PointCloud(d, std::move(pts), n <= PointCloud::kMaxExact ? PackingMode::Exact : PackingMode::Greedy);
}

}  // namespace gw
