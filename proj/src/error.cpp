#include "apg/error.hpp"

namespace apg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPrime: return "NonPrime";
    case ErrorCode::SizeExceeded: return "SizeExceeded";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::WrongCharacteristic: return "WrongCharacteristic";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::MalformedClaim: return "MalformedClaim";
    case ErrorCode::CenterTrivial: return "CenterTrivial";
    case ErrorCode::EvenOrder: return "EvenOrder";
    case ErrorCode::AnchorMismatch: return "AnchorMismatch";
    case ErrorCode::InvariantBroken: return "InvariantBroken";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::QuotientTooLarge: return "QuotientTooLarge";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::NotACGroup: return "NotACGroup";
    case ErrorCode::CentralizerTooSmall: return "CentralizerTooSmall";
    case ErrorCode::NotFrobenius: return "NotFrobenius";
    case ErrorCode::ComplementTooSmall: return "ComplementTooSmall";
    case ErrorCode::FactorOddOrder: return "FactorOddOrder";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace apg
