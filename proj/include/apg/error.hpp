#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace apg {

enum class ErrorCode {
  NonPrime,
  SizeExceeded,
  DivisionByZero,
  WrongCharacteristic,
  InvalidPermutation,
  OrderCapExceeded,
  SearchBudgetExceeded,
  MalformedClaim,
  CenterTrivial,
  EvenOrder,
  AnchorMismatch,
  InvariantBroken,
  NotCommuting,
  QuotientTooLarge,
  InvalidParams,
  UnsupportedFamily,
  NotACGroup,
  CentralizerTooSmall,
  NotFrobenius,
  ComplementTooSmall,
  FactorOddOrder,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace apg
