#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace finite_hgf {

enum class ErrorCode {
  NotPrime,
  ReducibleModulus,
  NoGenerator,
  FieldTooLarge,
  InvalidField,
  LogOfZero,
  DivisionByZero,
  NotCoprime,
  NotDivisor,
  ConductorTooLarge,
  NoSuchCharacter,
  FieldMismatch,
  EvenCharacteristic,
  HypothesisViolated,
  XEqualsOne,
  ParseError,
  InvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

// All library failures surface as this exception; the code identifies the
// contract that was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace finite_hgf
