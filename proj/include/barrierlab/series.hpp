#pragma once

#include "barrierlab/types.hpp"

namespace barrierlab::specfun {

/// Truncation control shared by all series in this header.  A series stops
/// once two consecutive terms are both below rel_tol * |partial sum|; the
/// double test guards against alternating near-cancellation, where a single
/// small term is not evidence of convergence.
struct SeriesControl {
  double rel_tol = 1e-14;
  int max_terms = 10000;
};

/// Largest |z| accepted by kummer_m.  The series is entire, so this is a
/// term-count budget, not a radius of convergence; all solvers in this
/// project keep |z| well below it (compact supports give |z| <~ 10).
inline constexpr double kKummerMaxAbsZ = 100.0;

/// gauss_f refuses |z| above this margin.  Callers are expected to pick the
/// hypergeometric representation whose argument stays <= 0.5 + rounding (the
/// Legendre module does exactly that), so the margin is never approached.
inline constexpr double kGaussMaxAbsZ = 0.95;

/// Confluent hypergeometric M(a, b, z) = sum (a)_n / (b)_n * z^n / n!.
/// Throws InvalidParameter when b is a non-positive integer or |z| exceeds
/// the budget; NonConvergence when max_terms is hit first.
Complex kummer_m(Complex a, Complex b, Complex z, const SeriesControl& ctl = {});

/// dM/dz = (a/b) M(a+1, b+1, z).  Term-wise differentiation is exact, so the
/// derivative inherits the series accuracy (no finite differences anywhere).
Complex kummer_m_derivative(Complex a, Complex b, Complex z,
                            const SeriesControl& ctl = {});

/// Gauss hypergeometric F(a, b; c; z) = sum (a)_n (b)_n / (c)_n * z^n / n!.
Complex gauss_f(Complex a, Complex b, Complex c, Complex z,
                const SeriesControl& ctl = {});

/// dF/dz = (a b / c) F(a+1, b+1; c+1; z).
Complex gauss_f_derivative(Complex a, Complex b, Complex c, Complex z,
                           const SeriesControl& ctl = {});

/// Real even/odd solutions of w'' + (z^2/4 - a) w = 0, normalized to
/// w_e(a,0) = 1, w_e'(a,0) = 0, w_o(a,0) = 0, w_o'(a,0) = 1.  Evaluated from
/// the power series whose coefficients obey
///   alpha_{n+2} = a alpha_{n+1} - (n+1)(2n+1)/2 alpha_n   (even)
///   beta_{n+2}  = a beta_{n+1}  - (n+1)(2n+3)/2 beta_n    (odd)
/// with alpha_0 = alpha_1/a = beta_0 = beta_1/a = 1; terms carry the
/// factorial scaling z^{2n}/(2n)! resp. z^{2n+1}/(2n+1)! so nothing
/// overflows.  Parity is exact by construction: z enters only through z^2
/// and, for the odd series, one leading factor of z.
double weber_even(double a, double z, const SeriesControl& ctl = {});
double weber_odd(double a, double z, const SeriesControl& ctl = {});

}  // namespace barrierlab::specfun
