#pragma once

#include <stdexcept>
#include <string>

namespace cmon {

enum class ErrorCode {
  Parse,
  InvalidArgument,
  Precondition,
  DivisionByZero,
  ZeroInput,
  FieldMismatch,
  ContextMismatch,
  WindowMismatch,
  NotCoprime,
  NotInKm,
  NotInKmGamma,
  NonCoprimeModuli,
  PrimeInSupport,
  SubcosetNotProper,
  CoverNotContained,
  FactorBoundExceeded,
  ScaleExceeded,
  BoundExhausted,
  Internal,
};

const char* error_name(ErrorCode code);

/* Scale and search-bound failures are reported separately from bad input. */
bool is_exhaustion(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace cmon
