#pragma once

#include <stdexcept>
#include <string>

namespace hsmap {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition does not hold (e.g. |c0| >= |cn| for a Cohn step).
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

// Simultaneous root iteration did not reach the residual bound.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

// Evaluation requested outside the open unit disk, or at a point where a
// sheared part is undefined.
class DomainError : public Error {
 public:
  using Error::Error;
};

// No closed form is known for the requested (family, dilatation) pair.
class UnsupportedDilatation : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

// Parameter outside its admissible range; the message names the bound.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// Dilatation pair outside the catalogue the theorem gate knows about.
class UnknownScenario : public Error {
 public:
  using Error::Error;
};

}  // namespace hsmap
