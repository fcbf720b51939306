#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "cdelta/divergence.hpp"
#include "oracle.hpp"

using cdelta::ErrorKind;
using cdelta::RealSeries;
using cdelta::Variant;

namespace {

void expect_profile(const cdelta::DivergenceProfile& p, const std::vector<double>& expected, double tol) {
  ASSERT_EQ(p.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_NEAR(p[i], expected[i], tol) << "index " << i;
  }
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const cdelta::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected cdelta::Error";
  return ErrorKind::kUsageError;
}

}  // namespace

TEST(DivergenceProfile, SquaredSpikeSeries) {
  RealSeries v{2, 1, 1, 1, 1};
  expect_profile(cdelta::divergence_profile(v, Variant::kSquared), {2, 1, 1, 1, 1}, 1e-12);
  expect_profile(cdelta::divergence_profile_naive(v, Variant::kSquared), {2, 1, 1, 1, 1}, 0.0);
}

TEST(DivergenceProfile, SquaredUnevenSeries) {
  RealSeries v{2, 3, 4, 6, 9};
  const std::vector<double> expected{std::sqrt(70.0), std::sqrt(47.0), std::sqrt(34.0),
                                     std::sqrt(38.0), std::sqrt(119.0)};
  expect_profile(cdelta::divergence_profile(v, Variant::kSquared), expected, 1e-12);
  EXPECT_NEAR(expected[0], 8.367, 1e-3);
  EXPECT_NEAR(expected[4], 10.909, 1e-3);
}

TEST(DivergenceProfile, AbsoluteSpikeSeries) {
  RealSeries v{2, 1, 1, 1, 1};
  expect_profile(cdelta::divergence_profile(v, Variant::kAbsolute), {4, 1, 1, 1, 1}, 1e-12);
}

TEST(DivergenceProfile, ConstantSeriesIsAllZero) {
  for (double c : {0.0, 0.1, -7.25, 1e8}) {
    RealSeries v{c, c, c};
    for (auto variant : {Variant::kSquared, Variant::kAbsolute}) {
      expect_profile(cdelta::divergence_profile(v, variant), {0, 0, 0}, 0.0);
      expect_profile(cdelta::divergence_profile_naive(v, variant), {0, 0, 0}, 0.0);
    }
  }
}

TEST(DivergenceProfileNaive, HandExpansions) {
  expect_profile(cdelta::divergence_profile_naive(RealSeries{1, 2, 3}, Variant::kAbsolute), {3, 2, 3}, 0.0);
  expect_profile(cdelta::divergence_profile_naive(RealSeries{0, 0}, Variant::kSquared), {0, 0}, 0.0);
  expect_profile(cdelta::divergence_profile_naive(RealSeries{2, 4, 6, 8}, Variant::kSquared),
                 {std::sqrt(56.0), std::sqrt(24.0), std::sqrt(24.0), std::sqrt(56.0)}, 1e-15);
}

TEST(DivergenceProfile, Errors) {
  EXPECT_EQ(kind_of([] { cdelta::divergence_profile(RealSeries{1.0}, Variant::kSquared); }),
            ErrorKind::kSeriesTooShort);
  EXPECT_EQ(kind_of([] { cdelta::divergence_profile_naive(RealSeries{}, Variant::kAbsolute); }),
            ErrorKind::kSeriesTooShort);
  EXPECT_EQ(kind_of([] { RealSeries{1.0, std::numeric_limits<double>::quiet_NaN()}; }),
            ErrorKind::kNonFiniteValue);
  EXPECT_EQ(kind_of([] { RealSeries{std::numeric_limits<double>::infinity(), 1.0}; }),
            ErrorKind::kNonFiniteValue);
}

// Fast path agrees with the literal double loop across location/scale regimes.
TEST(DivergenceProfile, MatchesNaiveOnRandomSeries) {
  std::mt19937_64 rng(20251015);
  std::uniform_int_distribution<std::size_t> len(2, 300);
  for (int trial = 0; trial < 300; ++trial) {
    RealSeries v(oracle::random_series(rng, len(rng)));
    for (auto variant : {Variant::kSquared, Variant::kAbsolute}) {
      const auto fast = cdelta::divergence_profile(v, variant);
      const auto slow = cdelta::divergence_profile_naive(v, variant);
      for (std::size_t i = 0; i < v.size(); ++i) {
        ASSERT_LE(oracle::relative_error(fast[i], slow[i]), 1e-9)
            << "trial " << trial << " n=" << v.size() << " i=" << i;
      }
    }
  }
}

TEST(DivergenceProfile, MatchesNaiveAtLargeN) {
  std::mt19937_64 rng(7);
  RealSeries v(oracle::random_series(rng, 4096));
  for (auto variant : {Variant::kSquared, Variant::kAbsolute}) {
    const auto fast = cdelta::divergence_profile(v, variant);
    const auto slow = cdelta::divergence_profile_naive(v, variant);
    for (std::size_t i = 0; i < v.size(); ++i) {
      ASSERT_LE(oracle::relative_error(fast[i], slow[i]), 1e-9) << i;
    }
  }
}

TEST(DivergenceProfile, NonNegativeAndZeroOnlyWhenConstant) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    RealSeries v(oracle::random_series(rng, 2 + trial % 40));
    for (auto variant : {Variant::kSquared, Variant::kAbsolute}) {
      for (double d : cdelta::divergence_profile(v, variant).d) EXPECT_GT(d, 0.0);
    }
  }
}
