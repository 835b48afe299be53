#pragma once

#include <stdexcept>
#include <string>

namespace cyclo {

// Base of every recoverable error raised by the library. The CLI maps these
// to exit code 1; anything else is an internal failure.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define CYCLO_DEFINE_ERROR(Name)      \
  class Name : public Error {         \
  public:                             \
    using Error::Error;               \
  };

CYCLO_DEFINE_ERROR(DimensionMismatch)
CYCLO_DEFINE_ERROR(NotAUnit)
CYCLO_DEFINE_ERROR(DenominatorNotInvertible)
CYCLO_DEFINE_ERROR(PrecisionExhausted)
CYCLO_DEFINE_ERROR(ValidationError)
CYCLO_DEFINE_ERROR(DegreeTooSmall)
CYCLO_DEFINE_ERROR(WrongPrime)
CYCLO_DEFINE_ERROR(DimensionTooLarge)
CYCLO_DEFINE_ERROR(NotAnExtension)
CYCLO_DEFINE_ERROR(InvalidModel)
CYCLO_DEFINE_ERROR(ModelUnsupported)
CYCLO_DEFINE_ERROR(OrderBound)
CYCLO_DEFINE_ERROR(NotAHomomorphism)
CYCLO_DEFINE_ERROR(KernelNotCentral)

#undef CYCLO_DEFINE_ERROR

// Parse failures carry the byte offset into the input text.
class SyntaxError : public Error {
public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

} // namespace cyclo
