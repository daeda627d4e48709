#pragma once

#include <stdexcept>
#include <string>

namespace advgrasp {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed mesh or configuration document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input geometry violates a precondition (non-watertight, degenerate, ...).
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// A solver failed for numerical reasons. Distinct from a proven infeasibility.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace advgrasp
