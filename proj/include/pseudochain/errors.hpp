#pragma once

#include <stdexcept>
#include <string>

namespace pseudochain {

enum class ErrorCode {
  EndBlockNotSingleton,
  LengthMismatch,
  NonFiniteParameter,
  OutOfRange,
  DimensionMismatch,
  ConvergenceFailure,
  CapExceeded,
  RankDeficient,
  NonPositiveWeights,
  Breakdown,
  FitIllConditioned,
  EmptySelection,
  NoSignal,
  NoConsistentSolution,
  AmbiguousStructure,
  NotABlock,
  InvalidArgument,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pseudochain
