#pragma once

#include <stdexcept>
#include <string>

namespace stefanchain {

enum class ErrorCode {
  NoSignChange,
  MaxIterExceeded,
  SubdivisionLimit,
  InvalidParams,
  DegenerateRoot,
  OutOfDomain,
  OutOfRange,
  ZeroTemperature,
  SingularDenominator,
  LogDomain,
  NonMonotone,
  PicardDiverged,
  NonPositiveBoundary,
  SingularCoefficient,
};

const char* error_code_name(ErrorCode code);

class ChainError : public std::runtime_error {
 public:
  ChainError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw ChainError(code, what);
}

}  // namespace stefanchain
