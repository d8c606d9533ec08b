#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcp {

enum class ErrorKind {
  ExponentOutOfRange,
  BadIndex,
  MissingRelation,
  ConflictingOrder,
  BudgetExceeded,
  NotNilpotentForm,
  WeightDivergence,
  RingMismatch,
  UnsupportedRing,
  InfiniteOrder,
  CapExceeded,
  SyntaxError,
  DuplicateRelation,
  UnknownGenerator,
};

std::string_view to_string(ErrorKind kind);

/// Every recoverable failure in the library is reported through this type;
/// `kind()` is what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& what)
      : Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ", column " +
                                          std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace pcp
