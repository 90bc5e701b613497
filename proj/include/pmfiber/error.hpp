#pragma once

#include <stdexcept>
#include <string>

namespace pmfiber {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text or JSON that does not follow the documented grammar.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Input is well formed but violates an operation's precondition
// (size mismatch, wrong field, matrix not irreducible, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Input exceeds a configured size limit (2^n blowup).
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// A result failed its own exact re-verification. Either the hypothesis of
// a construction does not hold or there is a bug.
class VerificationError : public Error {
 public:
  using Error::Error;
};

// Polynomial division left a nonzero remainder.
class InexactDivisionError : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

}  // namespace pmfiber
