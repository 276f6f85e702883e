#include "gwidth/gaussian_mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "gwidth/special.hpp"

namespace gw {

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c, std::array<std::uint32_t, 2> k) {
  constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
  constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{M0} * c[0];
    const std::uint64_t p1 = std::uint64_t{M1} * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += W0;
    k[1] += W1;
  }
  return c;
}

GaussianSampleSet::GaussianSampleSet(int d, std::size_t n, std::uint64_t seed) : d_(d), n_(n), seed_(seed) {
  require(d >= 1, "sample set: dimension must be positive");
  require(n >= 1, "sample set: sample count must be positive");
  require(static_cast<std::size_t>(d) <= kMaxEntries / n,
          "sample set: n*d exceeds the memory budget of 2^27 entries");
  data_.resize(n * static_cast<std::size_t>(d));
  parallel_map(
      n,
      [&](std::size_t i) {
        fill_row(seed_, i, d_, data_.data() + i * d_);
        return 0.0;
      },
      0);
}

void GaussianSampleSet::fill_row(std::uint64_t seed, std::size_t i, int d, double* out) {
  const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const std::uint64_t row = i;
  for (int j = 0; j < d; j += 2) {
    const auto blk = philox4x32(
        {static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(row >> 32), static_cast<std::uint32_t>(j / 2),
         0x6d63u},
        key);
    for (int h = 0; h < 2 && j + h < d; ++h) {
      const std::uint64_t bits = (std::uint64_t{blk[2 * h]} << 21) | (blk[2 * h + 1] >> 11);
      const double u = (static_cast<double>(bits) + 0.5) * 0x1p-53;
      out[j + h] = normal_quantile(u);
    }
  }
}

namespace {
std::atomic<int> g_threads{0};
}

void set_default_threads(int threads) { g_threads = std::max(0, threads); }

int default_threads() {
  const int t = g_threads.load();
  if (t > 0) return t;
  return std::max(1u, std::thread::hardware_concurrency());
}

Vec parallel_map(std::size_t n, const std::function<double(std::size_t)>& f, int threads) {
  Vec out(n);
  const int T = static_cast<int>(std::min<std::size_t>(threads > 0 ? threads : default_threads(), n));
  if (T <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(T);
  for (int t = 0; t < T; ++t) {
    pool.emplace_back([&, t] {
      try {
        const std::size_t lo = n * t / T, hi = n * (t + 1) / T;
        for (std::size_t i = lo; i < hi; ++i) out[i] = f(i);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

MCEstimate mean_estimate(const Vec& v) {
  MCEstimate e;
  e.n = v.size();
  if (v.empty()) return e;
  e.value = pairwise_sum(v) / static_cast<double>(v.size());
  if (v.size() > 1) {
    Vec dev(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) dev[i] = (v[i] - e.value) * (v[i] - e.value);
    const double var = pairwise_sum(dev) / static_cast<double>(v.size() - 1);
    e.se = std::sqrt(var / static_cast<double>(v.size()));
  }
  return e;
}

namespace {
void check_set(const ConvexBody& T, const GaussianSampleSet& s) {
  if (T.dim() != s.dim()) throw ConfigError("sample set dimension does not match the body");
}
}  // namespace

MCEstimate est_width(const ConvexBody& T, const GaussianSampleSet& s) {
  check_set(T, s);
  return mean_estimate(parallel_map(s.size(), [&](std::size_t i) { return T.support(s.row(i)); }));
}

MCEstimate est_local_width(const ConvexBody& T, double r, const GaussianSampleSet& s) {
  check_set(T, s);
  std::atomic<bool> approx{false};
  auto e = mean_estimate(parallel_map(s.size(), [&](std::size_t i) {
    const LocalValue v = T.local_support(r, s.row(i));
    if (v.approximate) approx = true;
    return v.value;
  }));
  e.approximate = approx;
  return e;
}

double penalized_support(const ConvexBody& T, double sigma, CSpan x) {
  const Vec p = T.project(scaled(x, sigma));
  return dot(x, p) - norm2sq(p) / (2.0 * sigma);
}

MCEstimate penalized_width(const ConvexBody& T, double sigma, const GaussianSampleSet& s) {
  check_set(T, s);
  require(sigma > 0.0 && std::isfinite(sigma), "penalized_width: sigma must be positive");
  return mean_estimate(parallel_map(s.size(), [&](std::size_t i) { return penalized_support(T, sigma, s.row(i)); }));
}

MCEstimate proj_second_moment(const ConvexBody& T, double sigma, const GaussianSampleSet& s) {
  check_set(T, s);
  require(sigma >= 0.0 && std::isfinite(sigma), "proj_second_moment: sigma must be nonnegative");
  return mean_estimate(parallel_map(s.size(), [&](std::size_t i) { return norm2sq(T.project(scaled(s.row(i), sigma))); }));
}

MCEstimate mean_norm(const GaussianSampleSet& s) {
  return mean_estimate(parallel_map(s.size(), [&](std::size_t i) { return norm2(s.row(i)); }));
}

LocalWidth::LocalWidth(const ConvexBody& T, const GaussianSampleSet& s) : T_(&T), s_(&s) {
  check_set(T, s);
  norms_ = parallel_map(s.size(), [&](std::size_t i) { return norm2(s.row(i)); });
  mean_norm_ = mean_estimate(norms_).value;
  width_ = est_width(T, s).value;
  if (T.kind() == BodyKind::L1) {
    const std::size_t n = s.size(), d = s.dim();
    sorted_.resize(n * d);
    s1_.resize(n * (d + 1));
    s2_.resize(n * (d + 1));
    for (std::size_t i = 0; i < n; ++i) {
      double* a = sorted_.data() + i * d;
      const CSpan x = s.row(i);
      for (std::size_t j = 0; j < d; ++j) a[j] = std::fabs(x[j]);
      std::sort(a, a + d, std::greater<>());
      double* p1 = s1_.data() + i * (d + 1);
      double* p2 = s2_.data() + i * (d + 1);
      p1[0] = p2[0] = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        p1[j + 1] = p1[j] + a[j];
        p2[j + 1] = p2[j] + a[j] * a[j];
      }
    }
  }
}

MCEstimate LocalWidth::operator()(double r) const {
  require(r >= 0.0 && std::isfinite(r), "local width: r must be nonnegative");
  ++evals_;
  const std::size_t n = s_->size();
  const int d = s_->dim();
  switch (T_->kind()) {
    case BodyKind::Ball: {
      const double R = std::min(r, T_->radius());
      Vec v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = R * norms_[i];
      return mean_estimate(v);
    }
    case BodyKind::L1: {
      const double rho = T_->radius();
      return mean_estimate(parallel_map(n, [&](std::size_t i) {
        return detail::l1_ball_local_sorted(sorted_.data() + i * d, s1_.data() + i * (d + 1),
                                            s2_.data() + i * (d + 1), d, rho, r);
      }));
    }
    default: return est_local_width(*T_, r, *s_);
  }
}

}  // namespace gw
