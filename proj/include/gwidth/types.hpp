#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gw {

using Vec = std::vector<double>;
using CSpan = std::span<const double>;

// Invalid input (dimension mismatch, bad parameters, unsupported body).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A numerical routine failed to meet its tolerance or budget.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double dot(CSpan a, CSpan b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2sq(CSpan a) { return dot(a, a); }
inline double norm2(CSpan a) { return std::sqrt(norm2sq(a)); }

inline double norm1(CSpan a) {
  double s = 0.0;
  for (double v : a) s += std::fabs(v);
  return s;
}

inline double norm_inf(CSpan a) {
  double s = 0.0;
  for (double v : a) s = std::fmax(s, std::fabs(v));
  return s;
}

inline double dist2(CSpan a, CSpan b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return std::sqrt(s);
}

inline Vec scaled(CSpan a, double c) {
  Vec out(a.begin(), a.end());
  for (double& v : out) v *= c;
  return out;
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ConfigError(what);
}

}  // namespace gw
