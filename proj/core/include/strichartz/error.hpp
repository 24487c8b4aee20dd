#pragma once

#include <stdexcept>
#include <string>

namespace strichartz {

/// Precondition violated by a caller-supplied argument (dimension, exponent, grid...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation requested at a point where the field is singular (x = 0).
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative or quadrature procedure did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace strichartz
