#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wrtwist {

enum class ErrorKind {
  NoRepresentation,
  NonIntegralPolynomial,
  DivisionByZero,
  FieldMismatch,
  UnequalDiagonal,
  BudgetExceeded,
  NotWR,
  DegenerateBasis,
  SignMismatch,
  NotAUnit,
  NotRepresentable,
  InvalidSpec,
  ReduciblePolynomial,
  GateFailed,
  ConditionOutOfRange,
  GaloisReconstructionFailed,
  ParseError,
};

std::string_view to_string(ErrorKind k) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wrtwist
