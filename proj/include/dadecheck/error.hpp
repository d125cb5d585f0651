#pragma once

#include <stdexcept>
#include <string>

namespace dc {

enum class ErrorKind {
  NotRationalInteger,
  ZeroInput,
  SyntaxError,
  UnknownSymbol,
  DanglingReference,
  UnboundSymbol,
  BudgetExceeded,
  NonIntegralModulus,
  InadmissibleImage,
  FormulaOnlyRow,
  NonIntegralFormula,
  NegativeExactCount,
  UnresolvedPair,
  ClosureOverflow,
  SingularMatrix,
  NotLinearlyIndependent,
  NonIntegralIndex,
  Config,
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotRationalInteger: return "NotRationalInteger";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::DanglingReference: return "DanglingReference";
    case ErrorKind::UnboundSymbol: return "UnboundSymbol";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NonIntegralModulus: return "NonIntegralModulus";
    case ErrorKind::InadmissibleImage: return "InadmissibleImage";
    case ErrorKind::FormulaOnlyRow: return "FormulaOnlyRow";
    case ErrorKind::NonIntegralFormula: return "NonIntegralFormula";
    case ErrorKind::NegativeExactCount: return "NegativeExactCount";
    case ErrorKind::UnresolvedPair: return "UnresolvedPair";
    case ErrorKind::ClosureOverflow: return "ClosureOverflow";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::NotLinearlyIndependent: return "NotLinearlyIndependent";
    case ErrorKind::NonIntegralIndex: return "NonIntegralIndex";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind), message_(what) {}
  ErrorKind kind() const noexcept { return kind_; }
  // The text without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace dc
