#pragma once

#include <stdexcept>
#include <string>

namespace symdex {

enum class ErrorKind {
  InvalidInput,
  WitnessNotMember,
  DepthExceeded,
  BudgetExceeded,
  Unbounded,
  EmptySet,
  NoCertificate,
  Inconclusive,
  PreconditionFailed,
  InvariantViolation,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library. Mathematical outcomes such as a
/// stalled extraction are not errors; they come back inside result types.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace symdex
