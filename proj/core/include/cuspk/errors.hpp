#pragma once

#include <stdexcept>
#include <string>

namespace cuspk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (bad a, b, p, shapes, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A configured size cap would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed: inexact division, d*d != 0,
/// a tower whose lengths contradict its iso pattern, ...
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace cuspk
