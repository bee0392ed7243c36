#include "sturmbeta/errors.hpp"

namespace sturmbeta {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kPrecondition: return "PreconditionError";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kPrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::kNotExpansionOfOne: return "NotExpansionOfOne";
    case ErrorKind::kFloorMismatch: return "FloorMismatch";
    case ErrorKind::kSlopeMismatch: return "SlopeMismatch";
    case ErrorKind::kInequalityUnresolved: return "InequalityUnresolved";
    case ErrorKind::kIdentityViolated: return "IdentityViolated";
    case ErrorKind::kDivergentInput: return "DivergentInput";
    case ErrorKind::kUnsupported: return "Unsupported";
  }
  return "Error";
}

}  // namespace sturmbeta
