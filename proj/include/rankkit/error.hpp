#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rankkit {

enum class ErrorCode {
  DuplicateEntry,
  OutOfRange,
  OutOfBand,
  NegativeEntry,
  DimensionMismatch,
  CarrierViolation,
  EmptySubset,
  NotInSupport,
  Uncoverable,
  TooLarge,
  PreconditionViolated,
  NotTridiagonal,
  ParseError,
  BadParameters,
  Internal,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// the CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " +
                                         std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace rankkit
