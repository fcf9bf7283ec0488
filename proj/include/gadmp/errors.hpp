#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gadmp {

enum class ErrorCode {
  DescriptorMismatch,
  InvalidPoint,
  InvalidTangent,
  InjectivityExceeded,
  DegenerateInput,
  EmptyProduct,
  InvalidArgument,
  InvalidN,
  NonMonotonicTime,
  TooShort,
  SingularScaling,
  GainMismatch,
  BasisMismatch,
  Unreachable,
  IkDiverged,
  NonSpdInput,
  NonSpdGain,
  Parse,  // malformed text input (descriptor strings, CSV/JSON contents)
  Io,
};

std::string_view to_string(ErrorCode code);

/// Failure category used by front ends to pick an exit status.
enum class ErrorCategory { Usage, Io, Math };

ErrorCategory category(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace gadmp
