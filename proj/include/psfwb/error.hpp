#pragma once

#include <stdexcept>
#include <string>

namespace psfwb {

enum class ErrorCode {
  InvalidArgument = 1,
  DivisionByZero,
  DimensionMismatch,
  UnknownLetter,
  AlphabetMismatch,
  SquareDetected,
  NotCopyless,
  CycleOfLengthAtLeastTwo,
  BudgetExceeded,
  InsufficientData,
  IrrationalRoots,
  FactorisationCeiling,
  ModulusMismatch,
  SizeGuard,
  ParseError,
  CopyPoolExhausted,
  Io,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Every domain failure in the library is reported through this exception.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failures carry a 1-based source position.
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

}  // namespace psfwb
