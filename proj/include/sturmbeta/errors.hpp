#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sturmbeta {

enum class ErrorKind {
  kPrecondition,
  kParse,
  kPrecisionExhausted,
  kNotExpansionOfOne,
  kFloorMismatch,
  kSlopeMismatch,
  kInequalityUnresolved,
  kIdentityViolated,
  kDivergentInput,
  kUnsupported,
};

std::string_view error_kind_name(ErrorKind kind);

// Base of every error raised by the library. The kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  std::string_view name() const { return error_kind_name(kind_); }

 private:
  ErrorKind kind_;
};

#define STURMBETA_DEFINE_ERROR(Name, Kind)                       \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& message)                    \
        : Error(ErrorKind::Kind, message) {}                     \
  };

STURMBETA_DEFINE_ERROR(PreconditionError, kPrecondition)
STURMBETA_DEFINE_ERROR(ParseError, kParse)
STURMBETA_DEFINE_ERROR(PrecisionExhausted, kPrecisionExhausted)
STURMBETA_DEFINE_ERROR(NotExpansionOfOne, kNotExpansionOfOne)
STURMBETA_DEFINE_ERROR(FloorMismatch, kFloorMismatch)
STURMBETA_DEFINE_ERROR(SlopeMismatch, kSlopeMismatch)
STURMBETA_DEFINE_ERROR(InequalityUnresolved, kInequalityUnresolved)
STURMBETA_DEFINE_ERROR(IdentityViolated, kIdentityViolated)
STURMBETA_DEFINE_ERROR(DivergentInput, kDivergentInput)
STURMBETA_DEFINE_ERROR(Unsupported, kUnsupported)

#undef STURMBETA_DEFINE_ERROR

}  // namespace sturmbeta
