// SPDX-License-Identifier: Apache-2.0

#ifndef ZIPSMOOTH_ERROR_HPP
#define ZIPSMOOTH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace zipsmooth {

enum class ErrorCode {
  InvalidArgument = 1,
  DimensionMismatch,
  SingularSystem,
  ZipperViolation,
  InvalidNodes,
  NotContracting,
  SignatureMismatch,
  CountMismatch,
  OutOfDomain,
  ToleranceUnreachable,
  NotNormalized,
  DegenerateInput,
  DepthCap,
  InvalidConfig,
  ParseError,
  ShapeError,
  IoError,
  DimensionUnsupported,
  ZeroTangent,
  CombinatorialBudget,
};

const char* to_string(ErrorCode code) noexcept;

// All library failures are reported as Error (or a subclass carrying a
// structured payload, see ZipperViolationError).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace zipsmooth

#endif
