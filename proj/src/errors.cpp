#include "gadmp/errors.hpp"

namespace gadmp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::InvalidTangent: return "InvalidTangent";
    case ErrorCode::InjectivityExceeded: return "InjectivityExceeded";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::EmptyProduct: return "EmptyProduct";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidN: return "InvalidN";
    case ErrorCode::NonMonotonicTime: return "NonMonotonicTime";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::SingularScaling: return "SingularScaling";
    case ErrorCode::GainMismatch: return "GainMismatch";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::IkDiverged: return "IkDiverged";
    case ErrorCode::NonSpdInput: return "NonSpdInput";
    case ErrorCode::NonSpdGain: return "NonSpdGain";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io:
      return ErrorCategory::Io;
    case ErrorCode::Parse:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidN:
    case ErrorCode::DescriptorMismatch:
    case ErrorCode::GainMismatch:
    case ErrorCode::BasisMismatch:
      return ErrorCategory::Usage;
    default:
      return ErrorCategory::Math;
  }
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

}  // namespace gadmp
