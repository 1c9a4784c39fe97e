#pragma once

#include <stdexcept>
#include <string>

namespace catbend {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (non-finite input,
/// non-positive radius, bad step size, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Latitude too close to a pole: every cylindrical ordinate diverges there.
class PoleError : public DomainError {
 public:
  explicit PoleError(double angle)
      : DomainError("angle " + std::to_string(angle) +
                    " rad is at or beyond the pole limit"),
        angle_(angle) {}

  double angle() const noexcept { return angle_; }

 private:
  double angle_;
};

/// A bearing of due east/west has no latitude-span parametrization.
class DegenerateBearingError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Point lies outside the physical sheet of a BendSpec.
class OutOfMapError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Invalid figure request.
class SpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace catbend
