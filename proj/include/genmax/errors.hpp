#pragma once

#include <stdexcept>
#include <string>

namespace genmax {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller handed an operation an input outside its documented domain
/// (e.g. a vector that is not a solution of the equation being probed).
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class ZeroMomentum : public Error {
 public:
  ZeroMomentum() : Error("momentum must be nonzero") {}
};

class NonpositiveMass : public Error {
 public:
  explicit NonpositiveMass(double m)
      : Error("mass must be positive, got " + std::to_string(m)) {}
};

/// A ratio between two triplets was requested but one of them vanishes.
class DegenerateMode : public Error {
 public:
  using Error::Error;
};

class InconsistentScenario : public Error {
 public:
  using Error::Error;
};

class CFLViolation : public Error {
 public:
  CFLViolation(double dt, double bound)
      : Error("time step " + std::to_string(dt) + " exceeds CFL bound " +
              std::to_string(bound)),
        dt_(dt),
        bound_(bound) {}

  double dt() const { return dt_; }
  double bound() const { return bound_; }

 private:
  double dt_;
  double bound_;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace genmax
