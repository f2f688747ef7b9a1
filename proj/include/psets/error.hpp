#pragma once

#include <stdexcept>
#include <string>

namespace psets {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: malformed arguments, non-prime moduli, dimension mismatches.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a configured size or work budget.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A weight tail (sum of gamma_j or gamma_j^t) does not converge.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// An integer result left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A proven inequality or internal consistency check did not hold.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace psets
