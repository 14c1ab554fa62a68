#pragma once

#include <stdexcept>
#include <string>

namespace cuspcert {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInputError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

// Raised when a matrix fails the unitarity-with-respect-to-the-form test.
class MembershipError : public Error {
 public:
  MembershipError(const std::string& msg, double residual)
      : Error(msg), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// A projective point with vanishing last coordinate has no horospherical
// coordinates; it is the distinguished cusp at infinity.
class PointAtInfinityError : public Error {
 public:
  using Error::Error;
};

class OutsideDomainError : public Error {
 public:
  using Error::Error;
};

// Raised when an operation's hypothesis is not met (e.g. a length query on a
// non-hyperbolic element, or a height-product bound on a cusp stabilizer).
class NotApplicableError : public Error {
 public:
  using Error::Error;
};

}  // namespace cuspcert
