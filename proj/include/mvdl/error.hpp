#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mvdl {

enum class ErrorCode {
  InvalidParameter,
  NotAQuantale,
  ClosureBudgetExceeded,
  SyntaxError,
  ArityMismatch,
  UnknownIdentifier,
  LengthMismatch,
  IncompatibleVariant,
  BudgetExceeded,
  UnknownAtom,
  NoRule,
  IterationPresent,
  NonTerminationGuard,
  MissingChi,
  NonlinearAlgebra,
  TagMismatch,
  PreconditionViolated,
  UnsupportedKind,
  InvalidInput,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Syntax errors carry the byte offset where parsing stopped.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t pos, const std::string& msg)
      : Error(ErrorCode::SyntaxError, "at " + std::to_string(pos) + ": " + msg), pos_(pos) {}

  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace mvdl
