#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subsum {

enum class ErrorKind {
  UncertifiedComparison,
  DivisionByZero,
  DomainMismatch,
  InvalidArgument,
  CapacityExceeded,
  BudgetExceeded,
  NonPositiveElement,
  ZeroElement,
  ZeroDifference,
  ZeroDirection,
  XNotLargest,
  CollinearInput,
  NotFound,
  TableGap,
  NotInGAP,
  HypothesisFailed,
  NoIndexFound,
  PipelineStalled,
  ParseError,
  DuplicateElement,
  StorageError,
};

std::string_view to_string(ErrorKind kind);

// Every failure the library reports carries a kind so the CLI can map it
// onto its exit-code contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace subsum
