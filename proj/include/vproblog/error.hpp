#pragma once

#include <stdexcept>
#include <string>

namespace vpl {

enum class ErrorCode {
  Syntax,
  NonGroundFact,
  ProbabilityRange,
  RangeRestriction,
  PredicateOverlap,
  ArityConflict,
  UnknownPredicate,
  UnregisteredVariable,
  CrossManager,
  MissingWeight,
  WeightSum,
  NodeLimit,
  CapExceeded,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

// All engine failures are reported through this exception; the code is what
// callers (and the CLI exit status) branch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse errors carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& what, int line, int column)
      : Error(code, format(what, line, column)), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  int line_;
  int column_;
};

}  // namespace vpl
