#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace cdelta {

enum class ErrorKind {
  kSeriesTooShort,
  kNonFiniteValue,
  kLengthMismatch,
  kUndefinedDivergence,
  kZeroVariance,
  kInvalidPermutationCount,
  kTooManyPermutations,
  kEmptyNull,
  kFileNotFound,
  kColumnNotFound,
  kParseError,
  kEmptyAfterDrop,
  kManifestError,
  kUsageError,
};

// Stable snake_case names; these are what the CLI writes to stderr.
constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSeriesTooShort: return "series_too_short";
    case ErrorKind::kNonFiniteValue: return "non_finite_value";
    case ErrorKind::kLengthMismatch: return "length_mismatch";
    case ErrorKind::kUndefinedDivergence: return "undefined_divergence";
    case ErrorKind::kZeroVariance: return "zero_variance";
    case ErrorKind::kInvalidPermutationCount: return "invalid_permutation_count";
    case ErrorKind::kTooManyPermutations: return "too_many_permutations";
    case ErrorKind::kEmptyNull: return "empty_null";
    case ErrorKind::kFileNotFound: return "file_not_found";
    case ErrorKind::kColumnNotFound: return "column_not_found";
    case ErrorKind::kParseError: return "parse_error";
    case ErrorKind::kEmptyAfterDrop: return "empty_after_drop";
    case ErrorKind::kManifestError: return "manifest_error";
    case ErrorKind::kUsageError: return "usage_error";
  }
  return "unknown";
}

using ErrorContext = std::map<std::string, std::string>;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, ErrorContext context = {})
      : std::runtime_error(message), kind_(kind), context_(std::move(context)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const ErrorContext& context() const noexcept { return context_; }

  // Empty string when the key is absent.
  std::string context_value(const std::string& key) const {
    auto it = context_.find(key);
    return it == context_.end() ? std::string{} : it->second;
  }

 private:
  ErrorKind kind_;
  ErrorContext context_;
};

}  // namespace cdelta
