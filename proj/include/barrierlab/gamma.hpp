#pragma once

#include "barrierlab/types.hpp"

namespace barrierlab::specfun {

/// log Gamma(z) for complex z, real on the positive real axis.
///
/// Lanczos approximation (g = 7, 9 coefficients) for Re z >= 0.5, extended by
/// the reflection formula log Gamma(z) = log pi - log sin(pi z) - log Gamma(1-z)
/// otherwise; the log-sin term is evaluated in exponential form so large
/// imaginary parts neither overflow nor lose digits.  Observed relative
/// accuracy (checked in the test suite against exact integer/half-integer
/// values and the reflection identity on random points with 0.5 < |z| < 10):
///
///   region                          |rel. error|
///   0.5 <= Re z <= 20, |Im z| <= 20   < 1e-13
///   reflected half-plane, |z| < 10    < 1e-12 (through exp(log_gamma))
///
/// In the reflected half-plane the imaginary part is continued through the
/// exponential form and may differ from the principal branch by a multiple
/// of 2*pi; every use in this project exponentiates ratios, which is exact
/// under that shift.
///
/// Throws PoleError at non-positive integers.
Complex log_gamma(Complex z);

/// exp(log_gamma(z)).
Complex gamma_fn(Complex z);

}  // namespace barrierlab::specfun
