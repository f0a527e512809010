#ifndef ASC_ERRORS_HPP
#define ASC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace asc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input data: non-square matrix, label out of range, length mismatch.
struct StructuralError : Error {
  using Error::Error;
};

// Bad JSON shape or field content; message carries field context.
struct SchemaError : Error {
  using Error::Error;
};

// Operation undefined for this input (e.g. idempotents of a non-commutative scheme).
struct UnsupportedInputError : Error {
  using Error::Error;
};

// Result would exceed the configured point cap.
struct ResourceError : Error {
  using Error::Error;
};

// Numeric eigenspace separation failed at the requested tolerance.
struct NumericalDegeneracyError : Error {
  using Error::Error;
};

} // namespace asc

#endif
