#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace oct {

// Base class of all errors thrown by this library.
struct OctError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Checked 64-bit addition overflowed; carries the offending operand pair.
struct OverflowError : OctError {
  std::int64_t lhs;
  std::int64_t rhs;
  OverflowError(std::int64_t a, std::int64_t b)
      : OctError("integer overflow in " + std::to_string(a) + " + " + std::to_string(b)),
        lhs(a),
        rhs(b) {}
};

// Halving an odd integer bound; signals a caller contract violation.
struct OddIntegerHalving : OctError {
  std::int64_t value;
  explicit OddIntegerHalving(std::int64_t v)
      : OctError("exact halving of odd integer " + std::to_string(v)), value(v) {}
};

// Operands of a pointwise matrix operation disagree in dimension.
struct DimensionMismatch : OctError {
  using OctError::OctError;
};

// Malformed input text; line is 1-based.
struct ParseError : OctError {
  int line;
  ParseError(int line_no, const std::string& msg)
      : OctError("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

// A constraint references a variable outside the declared range.
struct UnknownVariable : ParseError {
  UnknownVariable(int line_no, const std::string& var)
      : ParseError(line_no, "unknown variable " + var) {}
};

// An operation was invoked on input violating its documented precondition.
struct PreconditionError : OctError {
  using OctError::OctError;
};

// A traversal order is not a bijection or lacks the required key-first property.
struct InvalidTraversal : OctError {
  using OctError::OctError;
};

// A benchmark result disagreed with the reference oracle.
struct VerificationFailure : OctError {
  using OctError::OctError;
};

}  // namespace oct
