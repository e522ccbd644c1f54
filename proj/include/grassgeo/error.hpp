#pragma once

#include <stdexcept>
#include <string>

namespace grassgeo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands have incompatible shapes or scalar fields.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A numerical precondition is violated (not a projection, not tangent,
/// outside a chart domain, singular system, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative kernel stopped before reaching its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Malformed text input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace grassgeo
