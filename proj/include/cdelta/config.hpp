#pragma once

#include <optional>
#include <string_view>

namespace cdelta {

enum class Variant { kSquared, kAbsolute };

// kFormula keeps the 1/(n-1) factor inside each per-point root of the
// denominator; kRaw drops it, which is the arithmetic behind the usual
// worked numbers. The two differ by an exact constant per sample size.
enum class Normalization { kFormula, kRaw };

struct CdeltaConfig {
  Variant variant = Variant::kSquared;
  Normalization normalization = Normalization::kRaw;

  friend bool operator==(const CdeltaConfig&, const CdeltaConfig&) = default;
};

constexpr std::string_view to_string(Variant v) {
  return v == Variant::kSquared ? "squared" : "absolute";
}

constexpr std::string_view to_string(Normalization n) {
  return n == Normalization::kFormula ? "formula" : "raw";
}

constexpr std::optional<Variant> parse_variant(std::string_view s) {
  if (s == "squared") return Variant::kSquared;
  if (s == "absolute") return Variant::kAbsolute;
  return std::nullopt;
}

constexpr std::optional<Normalization> parse_normalization(std::string_view s) {
  if (s == "formula") return Normalization::kFormula;
  if (s == "raw") return Normalization::kRaw;
  return std::nullopt;
}

}  // namespace cdelta
