#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cdelta/error.hpp"

namespace cdelta {

/// One group of finite real measurements. Construction rejects NaN and
/// infinities; length requirements are checked by the operations that
/// need them.
class RealSeries {
 public:
  RealSeries() = default;
  RealSeries(std::initializer_list<double> values) : RealSeries(std::vector<double>(values)) {}
  explicit RealSeries(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        throw Error(ErrorKind::kNonFiniteValue, "series contains a non-finite value",
                    {{"index", std::to_string(i)}});
      }
    }
  }

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  // Exact comparison: a series is constant iff max == min bitwise.
  bool is_constant() const noexcept {
    if (values_.empty()) return true;
    auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
    return *lo == *hi;
  }

  friend bool operator==(const RealSeries&, const RealSeries&) = default;

 private:
  std::vector<double> values_;
};

/// Index-aligned x and y groups.
class PairedSample {
 public:
  PairedSample(RealSeries x, RealSeries y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size()) {
      throw Error(ErrorKind::kLengthMismatch, "x and y must have the same length",
                  {{"x_length", std::to_string(x_.size())},
                   {"y_length", std::to_string(y_.size())}});
    }
  }

  const RealSeries& x() const noexcept { return x_; }
  const RealSeries& y() const noexcept { return y_; }
  std::size_t size() const noexcept { return x_.size(); }

 private:
  RealSeries x_;
  RealSeries y_;
};

inline void require_min_length(const RealSeries& v, std::size_t min_n, const char* name) {
  if (v.size() < min_n) {
    throw Error(ErrorKind::kSeriesTooShort,
                std::string("series ") + name + " needs at least " + std::to_string(min_n) +
                    " values",
                {{"series", name}, {"n", std::to_string(v.size())}});
  }
}

}  // namespace cdelta
