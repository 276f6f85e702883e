#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>

#include "gwidth/body.hpp"
#include "gwidth/types.hpp"

namespace gw {

// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key);

// Standard normal entries. Entry (i, j) depends only on (seed, i, j): a Philox
// block keyed by the seed with counter (i, j/2) yields two 53-bit uniforms that
// are mapped through normal_quantile.
class GaussianSampleSet {
 public:
  static constexpr std::size_t kMaxEntries = std::size_t{1} << 27;  // 1 GiB of doubles

  GaussianSampleSet(int d, std::size_t n, std::uint64_t seed);

  int dim() const { return d_; }
  std::size_t size() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  CSpan row(std::size_t i) const { return CSpan(data_.data() + i * d_, d_); }
  const Vec& data() const { return data_; }

  static void fill_row(std::uint64_t seed, std::size_t i, int d, double* out);

 private:
  int d_;
  std::size_t n_;
  std::uint64_t seed_;
  Vec data_;
};

struct MCEstimate {
  double value = 0.0;
  double se = 0.0;  // standard error of the mean
  std::size_t n = 0;
  bool approximate = false;
};

// Worker threads for per-sample maps. Results never depend on this value:
// per-sample values are stored and reduced by a fixed pairwise tree.
void set_default_threads(int threads);
int default_threads();

// values[i] = f(i) for i < n, evaluated on up to `threads` threads.
Vec parallel_map(std::size_t n, const std::function<double(std::size_t)>& f, int threads = 0);
MCEstimate mean_estimate(const Vec& values);

MCEstimate est_width(const ConvexBody& T, const GaussianSampleSet& s);
MCEstimate est_local_width(const ConvexBody& T, double r, const GaussianSampleSet& s);
// E h_sigma(g) with h_sigma(x) = <x, p> - ||p||^2 / (2 sigma), p = Π_T(sigma x).
MCEstimate penalized_width(const ConvexBody& T, double sigma, const GaussianSampleSet& s);
// E ||Π_T(sigma g)||^2.
MCEstimate proj_second_moment(const ConvexBody& T, double sigma, const GaussianSampleSet& s);
MCEstimate mean_norm(const GaussianSampleSet& s);

double penalized_support(const ConvexBody& T, double sigma, CSpan x);

// Repeated evaluation of the empirical local width r -> mean_i sup_{T∩rB} <g_i,t>
// on a fixed sample set, with per-sample preprocessing where it pays off.
class LocalWidth {
 public:
  LocalWidth(const ConvexBody& T, const GaussianSampleSet& s);
  MCEstimate operator()(double r) const;
  double value(double r) const { return (*this)(r).value; }
  const ConvexBody& body() const { return *T_; }
  const GaussianSampleSet& samples() const { return *s_; }
  double mean_norm() const { return mean_norm_; }
  // Full width (r >= rad).
  double width() const { return width_; }
  std::size_t evaluations() const { return evals_; }

 private:
  const ConvexBody* T_;
  const GaussianSampleSet* s_;
  Vec norms_;
  Vec sorted_, s1_, s2_;  // l1 preprocessing, row stride d and d+1
  double mean_norm_ = 0.0;
  double width_ = 0.0;
  mutable std::size_t evals_ = 0;
};

}  // namespace gw
