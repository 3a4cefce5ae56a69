#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qfp {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotSymmetric,
  ParseError,
  FileNotFound,
  NoOffDiagonalSubmatrix,
  NotOffDiagRank1,
  NotOffDiagRank2,
  UnsupportedOffDiagRank,
  CaseMismatch,
  InternalInconsistency,
  NoQuintuple,
  NonIntegralAssembly,
  NotCoprime,
  ModulusTooLarge,
  BudgetExceeded,
  SplitUnavailable,
  PTooLarge,
  DegenerateSamples,
  Overflow,
};

std::string_view to_string(ErrorCode code);

/// Domain error raised by every qfp operation. The code is stable and is what
/// the CLI reports in its machine-readable error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace qfp
