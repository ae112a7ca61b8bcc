#pragma once

#include <stdexcept>

namespace polar {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument or violated type invariant (non-unit vector, asymmetric or
// indefinite shape matrix, malformed instance data).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Settings outside their documented range (starts < 1, budget < 1, ...).
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

// Operation called with a vector or matrix of the wrong dimension.
class WrongDimension : public Error {
 public:
  using Error::Error;
};

// The linear map handed to from_linear_image is numerically rank deficient.
class DegenerateTransform : public Error {
 public:
  using Error::Error;
};

// The vector system is linearly dependent; all eigenvalue bounds vanish and
// no witness can be constructed.
class DegenerateSystem : public Error {
 public:
  using Error::Error;
};

// A certified inequality failed beyond its floating point tolerance.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace polar
