#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sagdbscan {

enum class ErrorCode {
  ParseError,
  NonFiniteValue,
  RaggedRows,
  InvalidSpread,
  TooFewPoints,
  IoError,
  DimensionMismatch,
  NonFiniteInput,
  KOutOfRange,
  TooFewObjects,
  SplitOutOfRange,
  SubsetTooSmall,
  SubsetDegenerate,
  InvalidParameter,
  NoLabeledSeed,
  DegenerateDenseSubset,
  LengthMismatch,
  MissingLabels,
  NotTwoDimensional,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::InvalidSpread: return "InvalidSpread";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::TooFewObjects: return "TooFewObjects";
    case ErrorCode::SplitOutOfRange: return "SplitOutOfRange";
    case ErrorCode::SubsetTooSmall: return "SubsetTooSmall";
    case ErrorCode::SubsetDegenerate: return "SubsetDegenerate";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NoLabeledSeed: return "NoLabeledSeed";
    case ErrorCode::DegenerateDenseSubset: return "DegenerateDenseSubset";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::MissingLabels: return "MissingLabels";
    case ErrorCode::NotTwoDimensional: return "NotTwoDimensional";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable error code. The message always
/// starts with the code name so command-line output stays greppable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sagdbscan
