#pragma once

#include <stdexcept>
#include <string>

namespace adhmkit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes are inconsistent (wrong sizes, wrong C-list length, ...).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the values fails: singular gauge, point outside a
/// chart, non-finite entries, invalid ADHM data, ...
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The numerical decision cannot be made reliably at the configured
/// tolerances (no singular-value gap, determinant at the noise floor, ...).
class IndeterminateError : public Error {
 public:
  using Error::Error;
};

}  // namespace adhmkit
