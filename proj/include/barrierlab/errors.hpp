#pragma once

#include <stdexcept>
#include <string>

namespace barrierlab {

/// Base class for all failures raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A series or iteration hit its term/step budget before the tail bound held.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// An argument violates a documented precondition (forbidden parameter value,
/// series argument outside the convergence budget, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// log_gamma evaluated at a non-positive integer.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A Gamma argument in a closed-form scattering expression landed on a pole.
class GammaPole : public Error {
 public:
  using Error::Error;
};

/// Basis evaluation requested outside the segment's support.
class OutOfSupport : public Error {
 public:
  using Error::Error;
};

/// A boundary value needed as a denominator vanished to rounding.
class DegenerateBoundary : public Error {
 public:
  using Error::Error;
};

/// The two Legendre solutions are not independent (integer order).
class WronskianCollapse : public Error {
 public:
  using Error::Error;
};

/// Neither hypergeometric representation has a convergent argument.
class RepresentationBreakdown : public Error {
 public:
  using Error::Error;
};

/// The interface-matching system is numerically singular.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// The composite potential failed validation.
class InvalidComposite : public Error {
 public:
  using Error::Error;
};

/// E = 0 incidence: the incoming current vanishes and scattering/dwell
/// quantities are undefined.
class ZeroEnergy : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature could not reach its tolerance within the budget.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// The integrator step size underflowed.
class StiffnessWarning : public Error {
 public:
  using Error::Error;
};

}  // namespace barrierlab
