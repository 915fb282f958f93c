// SPDX-License-Identifier: Apache-2.0

#include "zipsmooth/error.hpp"

namespace zipsmooth {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::ZipperViolation: return "ZipperViolation";
    case ErrorCode::InvalidNodes: return "InvalidNodes";
    case ErrorCode::NotContracting: return "NotContracting";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::ToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::DepthCap: return "DepthCap";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::ZeroTangent: return "ZeroTangent";
    case ErrorCode::CombinatorialBudget: return "CombinatorialBudget";
  }
  return "Unknown";
}

}  // namespace zipsmooth
