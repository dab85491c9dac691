#include "sentalpha/error.hpp"

namespace sentalpha {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::NonMonotonicDates: return "NonMonotonicDates";
    case ErrorCode::GapTooWide: return "GapTooWide";
    case ErrorCode::ZeroPrice: return "ZeroPrice";
    case ErrorCode::UnlabeledText: return "UnlabeledText";
    case ErrorCode::SpanTooShort: return "SpanTooShort";
    case ErrorCode::DegenerateSplit: return "DegenerateSplit";
    case ErrorCode::ConstantSeries: return "ConstantSeries";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooFewMinority: return "TooFewMinority";
    case ErrorCode::InsufficientHistory: return "InsufficientHistory";
    case ErrorCode::MissingReturn: return "MissingReturn";
    case ErrorCode::SpanMismatch: return "SpanMismatch";
  }
  return "Unknown";
}

}  // namespace sentalpha
