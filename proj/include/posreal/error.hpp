#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace posreal {

enum class ErrorCode {
  ZeroDenominator,
  NotStrictlyProper,
  NotCoprime,
  NotPrimitive,
  NonpositiveDominantResidue,
  NoPolygonIndex,
  MultiplePoleUnsupported,
  BadPoleBlock,
  BudgetTooSmall,
  NotInPolygon,
  DegenerateBarycentric,
  LeftoverNegative,
  NegativeEntry,
  NegativePrefix,
  BaseMismatch,
  NegativeImpulse,
  NotApplicable,
  DimensionMismatch,
  InvalidInput,
  Internal,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// that callers (the CLI in particular) can map it to an outcome.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Thrown by zero_pattern when the scan meets a genuinely negative impulse value.
class NegativeImpulseError : public Error {
 public:
  NegativeImpulseError(int index, double value)
      : Error(ErrorCode::NegativeImpulse,
              "t_" + std::to_string(index) + " = " + std::to_string(value) + " is negative"),
        index_(index),
        value_(value) {}

  int index() const noexcept { return index_; }
  double value() const noexcept { return value_; }

 private:
  int index_;
  double value_;
};

}  // namespace posreal
