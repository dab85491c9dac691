#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sentalpha {

enum class ErrorCode {
  InvalidArgument,
  Io,
  MalformedRecord,
  NonMonotonicDates,
  GapTooWide,
  ZeroPrice,
  UnlabeledText,
  SpanTooShort,
  DegenerateSplit,
  ConstantSeries,
  LengthMismatch,
  SingleClass,
  DimensionMismatch,
  TooFewMinority,
  InsufficientHistory,
  MissingReturn,
  SpanMismatch,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure caused by bad input or a violated precondition is reported
// through this type; anything else escaping the library is a bug.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sentalpha
