#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace granular {

/// Root of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: violates a type invariant or an operation precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Two operands were sampled on different grids.
class ShapeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Argument outside the domain of a function (e.g. u outside [a,b], log of a nonpositive value).
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Operation not available for the given configuration.
class UnsupportedError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Division by a grid with an exact zero.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double alpha, double mu)
      : Error(what), alpha_(alpha), mu_(mu) {}

  double alpha() const noexcept { return alpha_; }
  double mu() const noexcept { return mu_; }

 private:
  double alpha_;
  double mu_;
};

/// A time-stepping solver produced a non-finite state.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t node, double alpha, double mu)
      : Error(what), node_(node), alpha_(alpha), mu_(mu) {}

  std::size_t node() const noexcept { return node_; }
  double alpha() const noexcept { return alpha_; }
  double mu() const noexcept { return mu_; }

 private:
  std::size_t node_;
  double alpha_;
  double mu_;
};

}  // namespace granular
