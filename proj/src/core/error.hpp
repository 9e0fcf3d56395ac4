#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace utie {

// Numeric values are part of the C API (utie_status) and must stay stable.
enum class ErrorCode : int {
  kOk = 0,
  // I/O and format errors.
  kIoError = 1,
  kMalformedHeader = 2,
  kUnsupportedDescriptor = 3,
  kShapeError = 4,
  kMalformedRecord = 5,
  // Validation errors.
  kDuplicateId = 10,
  kRowOutOfRange = 11,
  kRowUncovered = 12,
  kZeroNormEmbedding = 13,
  kEmptyField = 14,
  kLabelCountMismatch = 15,
  kDuplicateLabel = 16,
  kDanglingPairId = 17,
  kBadLabel = 18,
  kMixedFoldPresence = 19,
  kNonContiguousFolds = 20,
  kSelfPair = 21,
  kDuplicateRow = 22,
  // Numeric and domain errors.
  kNonFiniteInput = 30,
  kDimensionMismatch = 31,
  kEmptySet = 32,
  kIndexOutOfRange = 33,
  kDegenerateAnchorSet = 34,
  kMissingPlaceholder = 35,
  kMultiplePlaceholders = 36,
  kUnknownGroupLabel = 37,
  kDegenerateLabels = 38,
  kFoldTooSmall = 39,
  kEmptyInput = 40,
  kNeedTwoGroups = 41,
  kPerfectGroup = 42,
  kConfigInvalid = 43,
  kInvalidArgument = 44,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// True for codes that describe unreadable or malformed input rather than
// content that parsed but failed validation.
bool is_format_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace utie
