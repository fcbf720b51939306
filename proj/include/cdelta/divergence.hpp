#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "cdelta/config.hpp"
#include "cdelta/series.hpp"

namespace cdelta {

/// Per-point divergence of one series from the rest of its group.
///
/// kSquared: d_i = sqrt(sum_{j != i} (v_i - v_j)^2)
/// kAbsolute: d_i = sum_{j != i} |v_i - v_j|
///
/// Every pair (i, j) contributes to both d_i and d_j.
struct DivergenceProfile {
  std::vector<double> d;
  Variant variant = Variant::kSquared;

  std::size_t size() const noexcept { return d.size(); }
  double operator[](std::size_t i) const { return d[i]; }
};

namespace detail {

// O(n). Uses sum_j (c_i - c_j)^2 = n*c_i^2 - 2*c_i*S + Q on mean-centered
// values, which keeps the three terms of comparable magnitude.
inline std::vector<double> squared_profile_fast(std::span<const double> v) {
  const std::size_t n = v.size();
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);

  std::vector<double> c(n);
  double s = 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = v[i] - mean;
    s += c[i];
    q += c[i] * c[i];
  }

  const double nd = static_cast<double>(n);
  const double clamp_floor = -1e-9 * q;
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    double inner = nd * c[i] * c[i] - 2.0 * c[i] * s + q;
    if (inner < 0.0 && inner >= clamp_floor) inner = 0.0;
    d[i] = std::sqrt(inner);
  }
  return d;
}

// O(n log n): sort once, then for the point at sorted rank r
//   A = c*r - prefix[r] + (total - prefix[r+1]) - c*(n-r-1)
inline std::vector<double> absolute_profile_fast(std::span<const double> v) {
  const std::size_t n = v.size();
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });

  std::vector<double> sorted(n);
  for (std::size_t r = 0; r < n; ++r) sorted[r] = v[order[r]] - mean;

  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t r = 0; r < n; ++r) prefix[r + 1] = prefix[r] + sorted[r];
  const double total = prefix[n];

  std::vector<double> d(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double c = sorted[r];
    const double below = c * static_cast<double>(r) - prefix[r];
    const double above = (total - prefix[r + 1]) - c * static_cast<double>(n - r - 1);
    d[order[r]] = std::max(0.0, below) + std::max(0.0, above);
  }
  return d;
}

inline void validate_profile_input(const RealSeries& v) { require_min_length(v, 2, "v"); }

}  // namespace detail

inline DivergenceProfile divergence_profile(const RealSeries& v, Variant variant) {
  detail::validate_profile_input(v);
  if (v.is_constant()) {
    return {std::vector<double>(v.size(), 0.0), variant};
  }
  if (variant == Variant::kSquared) {
    return {detail::squared_profile_fast(v.values()), variant};
  }
  return {detail::absolute_profile_fast(v.values()), variant};
}

/// Literal double loop, no algebraic rearrangement. O(n^2); kept as the
/// reference the fast path is checked against.
inline DivergenceProfile divergence_profile_naive(const RealSeries& v, Variant variant) {
  detail::validate_profile_input(v);
  const std::size_t n = v.size();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double diff = v[i] - v[j];
      acc += variant == Variant::kSquared ? diff * diff : std::fabs(diff);
    }
    d[i] = variant == Variant::kSquared ? std::sqrt(acc) : acc;
  }
  return {std::move(d), variant};
}

}  // namespace cdelta
