#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>

#include "cdelta/config.hpp"
#include "cdelta/divergence.hpp"
#include "cdelta/error.hpp"
#include "cdelta/series.hpp"

namespace cdelta {

/// A computed coefficient together with its signal (numerator) and noise
/// (denominator). value == numerator / denominator, denominator > 0.
struct CdeltaValue {
  double value = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  CdeltaConfig config;
  std::size_t n = 0;
};

/// Observed coefficient plus the sample-relative rescaling against the
/// larger of the two self-similarities.
struct CdeltaReport {
  CdeltaValue observed;
  CdeltaValue self_x;
  CdeltaValue self_y;
  double cdelta_max = 0.0;
  double rescaled = 0.0;
};

namespace detail {

// Per-group average divergence as it enters the denominator.
inline double group_scale(std::span<const double> d, const CdeltaConfig& config) {
  const double n = static_cast<double>(d.size());
  const double sum = std::accumulate(d.begin(), d.end(), 0.0);
  if (config.variant == Variant::kAbsolute && config.normalization == Normalization::kFormula) {
    return sum / (n * (n - 1.0));
  }
  return sum / n;
}

inline double pairing_numerator(std::span<const double> dx, std::span<const double> dy) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dx.size(); ++i) acc += dx[i] * dy[i];
  return acc;
}

inline double shared_denominator(std::span<const double> dx, std::span<const double> dy,
                                 const CdeltaConfig& config) {
  double denom = group_scale(dx, config) * group_scale(dy, config);
  // sqrt(1/(n-1)) inside each root, squared across the two groups.
  if (config.variant == Variant::kSquared && config.normalization == Normalization::kFormula) {
    denom /= static_cast<double>(dx.size()) - 1.0;
  }
  return denom;
}

inline void require_defined(const RealSeries& x, const RealSeries& y) {
  const bool cx = x.is_constant();
  const bool cy = y.is_constant();
  if (cx || cy) {
    const char* which = cx && cy ? "x,y" : (cx ? "x" : "y");
    throw Error(ErrorKind::kUndefinedDivergence,
                "coefficient is undefined (0/0): at least one group is constant",
                {{"constant", which}});
  }
}

inline void validate_sample(const PairedSample& sample) {
  require_min_length(sample.x(), 2, "x");
  require_min_length(sample.y(), 2, "y");
  require_defined(sample.x(), sample.y());
}

}  // namespace detail

/// Coefficient from precomputed profiles. Profiles must come from
/// non-constant series of equal length and match config.variant.
inline CdeltaValue cdelta_from_profiles(const DivergenceProfile& px, const DivergenceProfile& py,
                                        const CdeltaConfig& config) {
  CdeltaValue out;
  out.config = config;
  out.n = px.size();
  out.numerator = detail::pairing_numerator(px.d, py.d);
  out.denominator = detail::shared_denominator(px.d, py.d, config);
  out.value = out.numerator / out.denominator;
  return out;
}

inline CdeltaValue cdelta(const PairedSample& sample, const CdeltaConfig& config = {}) {
  detail::validate_sample(sample);
  const auto px = divergence_profile(sample.x(), config.variant);
  const auto py = divergence_profile(sample.y(), config.variant);
  return cdelta_from_profiles(px, py, config);
}

inline CdeltaValue self_similarity(const RealSeries& v, const CdeltaConfig& config = {}) {
  require_min_length(v, 2, "v");
  detail::require_defined(v, v);
  const auto p = divergence_profile(v, config.variant);
  return cdelta_from_profiles(p, p, config);
}

inline double cdelta_max(const PairedSample& sample, const CdeltaConfig& config = {}) {
  detail::validate_sample(sample);
  return std::max(self_similarity(sample.x(), config).value,
                  self_similarity(sample.y(), config).value);
}

/// observed / max(self_x, self_y). By Cauchy-Schwarz the observed value never
/// exceeds sqrt(self_x * self_y), so the result lies in (0, 1]; it is exactly
/// 1 when x and y are elementwise equal.
inline CdeltaReport rescaled_cdelta(const PairedSample& sample, const CdeltaConfig& config = {}) {
  detail::validate_sample(sample);
  const auto px = divergence_profile(sample.x(), config.variant);
  const auto py = divergence_profile(sample.y(), config.variant);

  CdeltaReport report;
  report.observed = cdelta_from_profiles(px, py, config);
  report.self_x = cdelta_from_profiles(px, px, config);
  report.self_y = cdelta_from_profiles(py, py, config);
  report.cdelta_max = std::max(report.self_x.value, report.self_y.value);
  // Rounding can push the ratio a few ulps past 1 for near-identical profiles.
  report.rescaled = std::min(1.0, report.observed.value / report.cdelta_max);
  return report;
}

}  // namespace cdelta
