#include "cmon/error.hpp"

namespace cmon {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Precondition: return "PreconditionViolated";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::WindowMismatch: return "WindowMismatch";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NotInKm: return "NotInKm";
    case ErrorCode::NotInKmGamma: return "NotInKmGamma";
    case ErrorCode::NonCoprimeModuli: return "NonCoprimeModuli";
    case ErrorCode::PrimeInSupport: return "PrimeInSupport";
    case ErrorCode::SubcosetNotProper: return "SubcosetNotProper";
    case ErrorCode::CoverNotContained: return "CoverNotContained";
    case ErrorCode::FactorBoundExceeded: return "FactorBoundExceeded";
    case ErrorCode::ScaleExceeded: return "ScaleExceeded";
    case ErrorCode::BoundExhausted: return "BoundExhausted";
    case ErrorCode::Internal: return "InternalError";
  }
  return "UnknownError";
}

bool is_exhaustion(ErrorCode code) {
  return code == ErrorCode::FactorBoundExceeded || code == ErrorCode::ScaleExceeded ||
         code == ErrorCode::BoundExhausted;
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace cmon
