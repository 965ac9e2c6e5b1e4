#include "finite_hgf/error.hpp"

namespace finite_hgf {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::NoGenerator: return "NoGenerator";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::LogOfZero: return "LogOfZero";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NotDivisor: return "NotDivisor";
    case ErrorCode::ConductorTooLarge: return "ConductorTooLarge";
    case ErrorCode::NoSuchCharacter: return "NoSuchCharacter";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::XEqualsOne: return "XEqualsOne";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace finite_hgf
