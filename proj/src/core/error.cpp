#include "core/error.hpp"

namespace utie {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kMalformedHeader: return "MalformedHeader";
    case ErrorCode::kUnsupportedDescriptor: return "UnsupportedDescriptor";
    case ErrorCode::kShapeError: return "ShapeError";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kRowOutOfRange: return "RowOutOfRange";
    case ErrorCode::kRowUncovered: return "RowUncovered";
    case ErrorCode::kZeroNormEmbedding: return "ZeroNormEmbedding";
    case ErrorCode::kEmptyField: return "EmptyField";
    case ErrorCode::kLabelCountMismatch: return "LabelCountMismatch";
    case ErrorCode::kDuplicateLabel: return "DuplicateLabel";
    case ErrorCode::kDanglingPairId: return "DanglingPairId";
    case ErrorCode::kBadLabel: return "BadLabel";
    case ErrorCode::kMixedFoldPresence: return "MixedFoldPresence";
    case ErrorCode::kNonContiguousFolds: return "NonContiguousFolds";
    case ErrorCode::kSelfPair: return "SelfPair";
    case ErrorCode::kDuplicateRow: return "DuplicateRow";
    case ErrorCode::kNonFiniteInput: return "NonFiniteInput";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kDegenerateAnchorSet: return "DegenerateAnchorSet";
    case ErrorCode::kMissingPlaceholder: return "MissingPlaceholder";
    case ErrorCode::kMultiplePlaceholders: return "MultiplePlaceholders";
    case ErrorCode::kUnknownGroupLabel: return "UnknownGroupLabel";
    case ErrorCode::kDegenerateLabels: return "DegenerateLabels";
    case ErrorCode::kFoldTooSmall: return "FoldTooSmall";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kNeedTwoGroups: return "NeedTwoGroups";
    case ErrorCode::kPerfectGroup: return "PerfectGroup";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_format_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kIoError:
    case ErrorCode::kMalformedHeader:
    case ErrorCode::kUnsupportedDescriptor:
    case ErrorCode::kShapeError:
    case ErrorCode::kMalformedRecord:
      return true;
    default:
      return false;
  }
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace utie
