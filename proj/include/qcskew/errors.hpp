#pragma once

#include <stdexcept>
#include <string>

namespace qcskew {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that the quantity is undefined on, e.g. a triangle with a repeated
/// vertex or an image circle that collapsed to a point.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation was violated.
class DomainViolation : public Error {
 public:
  using Error::Error;
};

/// A map was evaluated outside its declared domain.
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

/// A grid-map file (or other serialized input) could not be parsed.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcskew
