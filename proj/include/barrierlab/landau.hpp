#pragma once

#include "barrierlab/potential.hpp"
#include "barrierlab/series.hpp"
#include "barrierlab/types.hpp"
#include "barrierlab/units.hpp"

namespace barrierlab::landau {

using specfun::SeriesControl;

/// Degree/order/argument of an associated Legendre evaluation on (-1, 1).
struct LegendreParams {
  Complex mu;   // order; purely imaginary in the scattering applications
  Complex nu;   // degree; nu(nu+1) = -2 m u0/(hbar^2 alpha_inv^2)
  double xi;    // in (-1, 1)
};

/// Degree for a sech^2 bump of height u0 and steepness alpha_inv:
/// nu = (-1 + sqrt(1 - 8 m u0 / (hbar alpha_inv)^2))/2, principal square
/// root, so Im(nu) >= 0 when the radicand is negative.  Both closed-form
/// transmission regimes depend only on nu(nu+1), which is invariant under
/// nu -> -nu-1.
Complex legendre_degree(double u0, double alpha_inv, const UnitSystem& u);

/// P^mu_nu(xi) on the cut (-1, 1).
///
/// Two hypergeometric representations cover the interval: for xi >= 0
///   P = ((1+xi)/(1-xi))^{mu/2} F(-nu, nu+1; 1-mu; (1-xi)/2) / Gamma(1-mu)
/// and for xi < 0 the analytic continuation with argument (1+xi)/2.  The
/// selection keeps the series argument <= 1/2, so the convergence margin of
/// gauss_f is never approached for xi in (-1, 1).  The power prefactors are
/// computed as exp(mu/2 (log(1+xi) - log(1-xi))) with real logs, which is
/// branch-free on the cut.
Complex legendre_p(const LegendreParams& p, const SeriesControl& ctl = {});

/// Value plus d/dxi, from term-wise differentiation of the same
/// representations (hypergeometric derivative identity, no finite
/// differences).
struct LegendreValue {
  Complex p, dp_dxi;
};
LegendreValue legendre_p_with_derivative(const LegendreParams& p,
                                         const SeriesControl& ctl = {});

/// Scattering off the full-line barrier u0 / cosh^2(alpha_inv x).
struct LandauScattering {
  Complex r, t;
  Complex normalization;  // N with psi = N P^mu_nu, asymptotically unit incident
  double big_r = 0.0, big_t = 0.0;
};

/// Closed-form r and t from the Gamma-function expressions
///   t = G(-nu - ika) G(1 + nu - ika) / (G(1 - ika) G(-ika)),
///   r = -G(-nu - ika) G(1 + nu - ika) G(ika) sin(pi nu) / (pi G(-ika)),
/// ika = i k / alpha_inv, evaluated in log space with one exponentiation.
/// The sign convention mu = +i k/alpha_inv makes P^mu_nu the solution with a
/// purely transmitted right asymptote (the opposite sign swaps the roles of
/// the two basis functions).  big_t is cross-checked against the independent
/// closed form
///   T = 2 sinh^2(pi k/a) / (cos(pi sqrt(1 - 8u0/a^2)) + cosh(2 pi k/a))
/// (cos -> cosh of sqrt(8u0/a^2 - 1) in the high-barrier regime); a mismatch
/// beyond 1e-9 throws, a Gamma argument on a pole throws GammaPole.
LandauScattering landau_scattering(const SechShape& shape, double E,
                                   const UnitSystem& u);

/// The cos/cosh closed form alone (regime picked from 8 u0 / alpha_inv^2).
double landau_transmission_closed_form(const SechShape& shape, double E,
                                       const UnitSystem& u);

/// Basis pair for a compact shifted sech^2 segment at x inside its support:
/// f1 = P^mu_nu(xi), f2 = P^{-mu}_nu(xi) with xi = tanh(alpha_inv (x-gamma))
/// and mu = i sqrt(k^2 + beta_shift^2)/alpha_inv; x-derivatives via
/// dxi/dx = alpha_inv (1 - xi^2).  The pair's Wronskian in x is the constant
/// -2 alpha_inv sin(mu pi)/pi; it vanishes iff mu is an integer, which
/// throws WronskianCollapse (cannot happen for E > 0, beta_shift > 0).
BasisPair sech_basis_at(const SechShape& shape, double E, const UnitSystem& u,
                        double x, const SeriesControl& ctl = {});

}  // namespace barrierlab::landau
