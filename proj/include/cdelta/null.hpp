#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string_view>
#include <thread>
#include <vector>

#include "cdelta/coefficient.hpp"
#include "cdelta/error.hpp"
#include "cdelta/series.hpp"

namespace cdelta {

// Stream identity written into reports so a null can be regenerated.
inline constexpr std::string_view kRngDescription =
    "mt19937_64; substream seed = splitmix64(seed + (t+1)*0x9E3779B97F4A7C15); "
    "fisher-yates with multiply-shift rejection";

inline constexpr std::size_t kDefaultPermutations = 1000;
inline constexpr std::size_t kMaxExhaustiveN = 8;

/// c_δ values under re-paired y, in permutation-index order.
struct NullDistribution {
  std::vector<double> samples;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  CdeltaConfig config;
  // Pairing does not enter the denominator, so every sample shares it.
  double denominator = 0.0;
};

struct NullQuantiles {
  double q01 = 0.0;
  double q05 = 0.0;
  double q50 = 0.0;
  double q95 = 0.0;
  double q99 = 0.0;
};

struct NullSummary {
  double observed = 0.0;
  double percentile = 0.0;  // 100 * #{sample < observed} / k
  double pseudo_p = 1.0;    // (1 + #{sample >= observed}) / (k + 1)
  double mean = 0.0;
  double sd = 0.0;
  NullQuantiles quantiles;
};

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t t) {
  return splitmix64(seed + (t + 1) * 0x9E3779B97F4A7C15ULL);
}

// Unbiased draw in [0, bound) (Lemire 2019). Bound > 0.
inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

inline void shuffle_indices(std::vector<std::size_t>& idx, std::mt19937_64& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(bounded_draw(rng, i));
    std::swap(idx[i - 1], idx[j]);
  }
}

inline double permuted_numerator(std::span<const double> dx, std::span<const double> dy,
                                 std::span<const std::size_t> perm) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dx.size(); ++i) acc += dx[i] * dy[perm[i]];
  return acc;
}

// Linear interpolation at index q*(k-1) of an ascending sequence.
inline double sorted_quantile(std::span<const double> sorted, double q) {
  if (sorted.size() == 1) return sorted.front();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

}  // namespace detail

/// Holds x fixed and re-pairs y by a uniform random permutation per draw.
/// Draw t uses its own generator seeded from (seed, t), so the result does
/// not depend on `threads` (0 = hardware concurrency).
inline NullDistribution permutation_null(const PairedSample& sample, const CdeltaConfig& config,
                                         std::size_t k, std::uint64_t seed,
                                         unsigned threads = 0) {
  if (k < 1) {
    throw Error(ErrorKind::kInvalidPermutationCount, "permutation count must be at least 1",
                {{"k", std::to_string(k)}});
  }
  detail::validate_sample(sample);
  const auto px = divergence_profile(sample.x(), config.variant);
  const auto py = divergence_profile(sample.y(), config.variant);
  const std::size_t n = sample.size();

  NullDistribution out;
  out.k = k;
  out.seed = seed;
  out.config = config;
  out.denominator = detail::shared_denominator(px.d, py.d, config);
  out.samples.assign(k, 0.0);

  auto run_range = [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> perm(n);
    for (std::size_t t = begin; t < end; ++t) {
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      std::mt19937_64 rng(detail::substream_seed(seed, t));
      detail::shuffle_indices(perm, rng);
      out.samples[t] = detail::permuted_numerator(px.d, py.d, perm) / out.denominator;
    }
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  // Not worth spawning threads for small jobs.
  if (k * n < 200'000) workers = 1;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, k));

  if (workers == 1) {
    run_range(0, k);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (k + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(k, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
  }
  return out;
}

/// Every pairing of y against x, in lexicographic order of the index
/// permutation. Limited to n <= 8 (40320 pairings).
inline NullDistribution exhaustive_null(const PairedSample& sample, const CdeltaConfig& config) {
  if (sample.size() > kMaxExhaustiveN) {
    throw Error(ErrorKind::kTooManyPermutations, "exhaustive null is limited to n <= 8",
                {{"n", std::to_string(sample.size())}});
  }
  detail::validate_sample(sample);
  const auto px = divergence_profile(sample.x(), config.variant);
  const auto py = divergence_profile(sample.y(), config.variant);

  NullDistribution out;
  out.config = config;
  out.denominator = detail::shared_denominator(px.d, py.d, config);

  std::vector<std::size_t> perm(sample.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    out.samples.push_back(detail::permuted_numerator(px.d, py.d, perm) / out.denominator);
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.k = out.samples.size();
  return out;
}

inline NullSummary summarize_null(const NullDistribution& null, double observed) {
  if (null.samples.empty()) {
    throw Error(ErrorKind::kEmptyNull, "null distribution has no samples");
  }
  if (!std::isfinite(observed)) {
    throw Error(ErrorKind::kNonFiniteValue, "observed value must be finite");
  }
  std::vector<double> sorted = null.samples;
  std::sort(sorted.begin(), sorted.end());
  const auto k = static_cast<double>(sorted.size());

  const auto below = static_cast<double>(
      std::lower_bound(sorted.begin(), sorted.end(), observed) - sorted.begin());

  NullSummary s;
  s.observed = observed;
  s.percentile = 100.0 * below / k;
  s.pseudo_p = (1.0 + (k - below)) / (k + 1.0);

  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / k;
  if (sorted.size() > 1) {
    double ss = 0.0;
    for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / (k - 1.0));
  }

  s.quantiles.q01 = detail::sorted_quantile(sorted, 0.01);
  s.quantiles.q05 = detail::sorted_quantile(sorted, 0.05);
  s.quantiles.q50 = detail::sorted_quantile(sorted, 0.50);
  s.quantiles.q95 = detail::sorted_quantile(sorted, 0.95);
  s.quantiles.q99 = detail::sorted_quantile(sorted, 0.99);
  return s;
}

}  // namespace cdelta
