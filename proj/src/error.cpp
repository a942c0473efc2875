#include "oormlp/error.hpp"

namespace oormlp {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotADistribution: return "NotADistribution";
    case ErrorCode::UnboundedSteepness: return "UnboundedSteepness";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteObjective: return "NonFiniteObjective";
    case ErrorCode::DegenerateCovariance: return "DegenerateCovariance";
    case ErrorCode::ZeroDensity: return "ZeroDensity";
    case ErrorCode::BracketingFailure: return "BracketingFailure";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::UnknownCheck: return "UnknownCheck";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace oormlp
