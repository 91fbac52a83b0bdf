#pragma once

#include <stdexcept>
#include <string>

namespace hslope {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad decimal strings, schema violations, values outside a
/// type's invariants (e.g. a point that is not in the upper half-plane).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its contract: budget below minimum,
/// hypothesis not satisfied, unvalidated construction, ...
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: precision exhaustion, an orbit leaving the half-plane,
/// quadrature that could not reach its tolerance, overflow.
class NumericError : public Error {
 public:
  using Error::Error;
};

class PrecisionError : public NumericError {
 public:
  using NumericError::NumericError;
};

class QuadratureError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace hslope
