#pragma once

#include "likint/types.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace likint {

// Pairwise (cascade) summation; error grows like log(n) rather than n.
inline double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 8) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

// log(sum exp(x_i)) with max-shift; -inf when every term underflows.
inline double logsumexp(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("logsumexp: empty input");
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : x) mx = std::max(mx, v);
  if (!std::isfinite(mx)) return mx;
  std::vector<double> e(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) e[i] = std::exp(x[i] - mx);
  return mx + std::log(pairwise_sum(e));
}

// Type-7 (linear interpolation) quantile of an ascending-sorted sample.
inline double quantile_type7(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile_type7: empty sample");
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile_type7: q outside [0,1]");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace likint
