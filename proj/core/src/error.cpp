#include "dsavoid/error.hpp"

namespace dsavoid {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ZeroNormal: return "ZeroNormal";
    case ErrorCode::ParallelNormals: return "ParallelNormals";
    case ErrorCode::SingularBasis: return "SingularBasis";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NearIntersectionSingularity: return "NearIntersectionSingularity";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::GuardConflict: return "GuardConflict";
    case ErrorCode::InvalidStart: return "InvalidStart";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + message), line_(line) {}

ValidationError::ValidationError(std::string field, std::string reason)
    : Error(ErrorCode::ValidationError, field + ": " + reason),
      field_(std::move(field)),
      reason_(std::move(reason)) {}

}  // namespace dsavoid
