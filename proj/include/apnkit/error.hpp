#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace apnkit {

enum class Errc {
  NonIrreducibleModulus,
  DegreeMismatch,
  ZeroInverse,
  FieldMismatch,
  ZeroPolynomial,
  NoSubfield,
  InexactDivision,
  TooManyVariables,
  ExponentOverflow,
  DegreeTooSmall,
  EmptyFunction,
  ZeroSection,
  DegreeOverflow,
  NoGoodSpecialization,
  RecombinationBudgetExceeded,
  NotHomogeneous,
  ZeroDirection,
  NoCoefficientEmbedding,
  ExtensionTooLarge,
  ParameterOutOfRange,
  SyntaxError,
  CoefficientOutOfField,
  SampleBudgetExhausted,
  InvalidArgument,
};

constexpr std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::NonIrreducibleModulus: return "NonIrreducibleModulus";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::ZeroInverse: return "ZeroInverse";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::NoSubfield: return "NoSubfield";
    case Errc::InexactDivision: return "InexactDivision";
    case Errc::TooManyVariables: return "TooManyVariables";
    case Errc::ExponentOverflow: return "ExponentOverflow";
    case Errc::DegreeTooSmall: return "DegreeTooSmall";
    case Errc::EmptyFunction: return "EmptyFunction";
    case Errc::ZeroSection: return "ZeroSection";
    case Errc::DegreeOverflow: return "DegreeOverflow";
    case Errc::NoGoodSpecialization: return "NoGoodSpecialization";
    case Errc::RecombinationBudgetExceeded: return "RecombinationBudgetExceeded";
    case Errc::NotHomogeneous: return "NotHomogeneous";
    case Errc::ZeroDirection: return "ZeroDirection";
    case Errc::NoCoefficientEmbedding: return "NoCoefficientEmbedding";
    case Errc::ExtensionTooLarge: return "ExtensionTooLarge";
    case Errc::ParameterOutOfRange: return "ParameterOutOfRange";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::CoefficientOutOfField: return "CoefficientOutOfField";
    case Errc::SampleBudgetExhausted: return "SampleBudgetExhausted";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can dispatch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace apnkit
