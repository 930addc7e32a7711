#pragma once

#include <stdexcept>
#include <string>

namespace grr {

/// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (cycle notation, group specs, fixture files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A size cap, node budget or retry cap was hit.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// Two routes that must agree did not. Always a bug somewhere.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace grr
