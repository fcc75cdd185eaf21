#pragma once

#include <stdexcept>
#include <string>

namespace dsbd {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// bad arguments: length mismatch, unsupported dimension, misaligned data
struct ArgumentError : Error {
  using Error::Error;
};

struct DegeneratePointError : Error {
  using Error::Error;
};

// evaluation outside the chart or region where an operation is defined
struct DomainError : Error {
  using Error::Error;
};

struct PoleError : Error {
  using Error::Error;
};

// power of an exact zero without regularization
struct SingularPointError : Error {
  using Error::Error;
};

struct IntegratorError : Error {
  using Error::Error;
};

}  // namespace dsbd
