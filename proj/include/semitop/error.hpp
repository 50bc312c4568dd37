#pragma once

#include <stdexcept>
#include <string>

namespace semitop {

  // Base of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A multiplication table (or other input) violates a structural invariant.
  class MalformedInput : public Error {
   public:
    using Error::Error;
  };

  // An argument is outside the domain of an operation (e.g. a non-idempotent
  // passed where an idempotent is required).
  class DomainError : public Error {
   public:
    using Error::Error;
  };

  // Input exceeds a configured enumeration bound.
  class SizeError : public Error {
   public:
    using Error::Error;
  };

  // Right congruence passed where a two-sided one is required, or mismatched
  // bases.
  class KindError : public Error {
   public:
    using Error::Error;
  };

  // A construction that a theorem guarantees to succeed did not. Signals a bug.
  class TheoremViolation : public Error {
   public:
    using Error::Error;
  };

  // Evaluating a map on a window left the window.
  class WindowEscape : public Error {
   public:
    using Error::Error;
  };

  // An element could not be evaluated at a requested point.
  class EvaluationError : public Error {
   public:
    using Error::Error;
  };

}  // namespace semitop
