#pragma once

#include <stdexcept>
#include <string>

namespace xxchain {

// Bad user-supplied values: chain sizes, couplings, grids, CLI config.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure (eigensolver non-convergence, sweep aborts).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A matrix that was supposed to be a (near-)positive state is not.
class InvalidStateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// File/stream failure while reading or writing results.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xxchain
