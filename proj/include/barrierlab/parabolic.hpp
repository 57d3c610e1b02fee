#pragma once

#include "barrierlab/potential.hpp"
#include "barrierlab/series.hpp"
#include "barrierlab/types.hpp"
#include "barrierlab/units.hpp"

namespace barrierlab::parabolic {

using specfun::SeriesControl;

/// Even/odd basis solutions of the in-barrier Schroedinger equation and their
/// x-derivatives at one point.  Normalized at the barrier center:
/// psi_e(gamma) = 1, psi_e'(gamma) = 0, psi_o(gamma) = 0,
/// psi_o'(gamma) = sqrt(2 beta) with beta = sqrt(2 m u0)/(hbar alpha).
/// Both functions are real-valued; the complex representation carries only
/// series rounding in the imaginary parts.  Wronskian: psi_e psi_o' -
/// psi_e' psi_o = sqrt(2 beta), constant across the support.
struct ParabolicBasisPoint {
  Complex psi_e, dpsi_e, psi_o, dpsi_o;

  Complex wronskian() const { return psi_e * dpsi_o - dpsi_e * psi_o; }
};

/// beta = sqrt(2 m u0) / (hbar alpha).
double beta_parameter(const ParabolicShape& s, const UnitSystem& u);

/// Basis values at x in [gamma - alpha, gamma + alpha].  Evaluated through
/// the confluent hypergeometric representation
///   psi_e = e^{-i beta u^2/2} M(a_e, 1/2, i beta u^2),   u = x - gamma,
///   psi_o = sqrt(2 beta) u e^{-i beta u^2/2} M(a_o, 3/2, i beta u^2),
/// with a_e = (1 + i k^2/beta - i alpha^2 beta)/4, a_o = a_e + 1/2; the
/// derivatives use the exact Kummer derivative identity, never finite
/// differences.  Throws OutOfSupport outside the segment, ZeroEnergy for
/// E <= 0.
ParabolicBasisPoint basis_at(const ParabolicShape& shape, double E,
                             const UnitSystem& u, double x,
                             const SeriesControl& ctl = {});

/// Scattering data for one symmetric parabolic barrier with a unit-amplitude
/// wave incident from the left.
struct SingleBarrierScattering {
  Complex r, t;          // reflected / transmitted amplitudes (global frame)
  Complex a_coef, b_coef;  // interior psi = a_coef psi_e + b_coef psi_o
  double big_r = 0.0, big_t = 0.0;
  double l_e = 0.0, l_o = 0.0;  // alpha psi'/psi at the right edge, real
  bool used_direct_solve = false;  // fallback path was taken (see below)
};

/// Closed-form single-barrier scattering via the boundary log-derivatives
///   L_e = alpha psi_e'(edge)/psi_e(edge),  L_o likewise,
///   r,t = -e^{-2 i k alpha}/2 [ (L_e + i k alpha)/(L_e - i k alpha)
///                               +- (L_o + i k alpha)/(L_o - i k alpha) ],
///   R = (L_e L_o + k^2 a^2)^2 / ((L_e^2 + k^2 a^2)(L_o^2 + k^2 a^2)),
///   T = k^2 a^2 (L_e - L_o)^2 / (same denominator),
/// which satisfy R + T = 1 identically for real L_e, L_o.  When psi_e or
/// psi_o vanishes at the edge to rounding (threshold 1e-12 of the basis
/// scale) the log-derivatives are undefined and the routine falls back to
/// the direct 4x4 interface-matching solve; used_direct_solve flags that.
SingleBarrierScattering scattering_single(const ParabolicShape& shape, double E,
                                          const UnitSystem& u);

/// Piecewise wavefunction for the solved single barrier: incident+reflected
/// plane waves left of the support, a_coef psi_e + b_coef psi_o inside,
/// transmitted wave to the right.
Complex wavefunction_single(const ParabolicShape& shape, double E,
                            const UnitSystem& u,
                            const SingleBarrierScattering& s, double x);

/// Basis pair adapter for the interface-matching solver.
BasisPair basis_pair_at(const ParabolicShape& shape, double E,
                        const UnitSystem& u, double x);

}  // namespace barrierlab::parabolic
