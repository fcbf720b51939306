#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "cdelta/error.hpp"
#include "cdelta/series.hpp"

namespace cdelta {

enum class CorrelationKind { kPearson, kSpearman };

struct CorrelationValue {
  double r = 0.0;
  CorrelationKind kind = CorrelationKind::kPearson;
};

namespace detail {

// Two-pass centered product-moment coefficient; both inputs non-constant.
inline double product_moment(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline void require_variance(const PairedSample& sample) {
  require_min_length(sample.x(), 2, "x");
  if (sample.x().is_constant() || sample.y().is_constant()) {
    throw Error(ErrorKind::kZeroVariance, "correlation needs nonzero variance in both series");
  }
}

}  // namespace detail

inline CorrelationValue pearson(const PairedSample& sample) {
  detail::require_variance(sample);
  return {detail::product_moment(sample.x().values(), sample.y().values()),
          CorrelationKind::kPearson};
}

/// Ranks 1..n; tied values share the mean of the ranks they span.
inline RealSeries rank_average(const RealSeries& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });

  std::vector<double> ranks(n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t stop = start + 1;
    while (stop < n && v[order[stop]] == v[order[start]]) ++stop;
    // positions start..stop-1 hold ranks start+1..stop
    const double mean_rank = 0.5 * static_cast<double>(start + 1 + stop);
    for (std::size_t p = start; p < stop; ++p) ranks[order[p]] = mean_rank;
    start = stop;
  }
  return RealSeries(std::move(ranks));
}

inline CorrelationValue spearman(const PairedSample& sample) {
  detail::require_variance(sample);
  const auto rx = rank_average(sample.x());
  const auto ry = rank_average(sample.y());
  return {detail::product_moment(rx.values(), ry.values()), CorrelationKind::kSpearman};
}

}  // namespace cdelta
