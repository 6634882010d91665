#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dsavoid {

enum class ErrorCode {
  InvalidInput,
  ZeroNormal,
  ParallelNormals,
  SingularBasis,
  RankDeficient,
  NearIntersectionSingularity,
  OutOfDomain,
  GuardConflict,
  InvalidStart,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string field, std::string reason);

  const std::string& field() const noexcept { return field_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string field_;
  std::string reason_;
};

}  // namespace dsavoid
