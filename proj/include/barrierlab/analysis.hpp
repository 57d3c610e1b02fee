#pragma once

#include <string>
#include <vector>

#include "barrierlab/multibarrier.hpp"
#include "barrierlab/potential.hpp"
#include "barrierlab/units.hpp"

namespace barrierlab::analysis {

/// sqrt(2 E / m): flux of the unit-amplitude incident wave, valid as the
/// dwell-time denominator on every subinterval, including between barriers
/// (the incident-current normalization fixes it globally, not per region).
/// Throws ZeroEnergy for E <= 0 (dwell times diverge as E -> 0).
double incoming_current(double E, const UnitSystem& u);

struct DwellReport {
  double x1 = 0.0, x2 = 0.0;  // integration interval
  double j_in = 0.0;          // incoming current, length/time
  double integral = 0.0;      // int |psi|^2 dx, dimension length
  double tau = 0.0;           // integral / j_in
  UnitSystem units;

  std::string to_json() const;  // carries explicit unit names
};

/// Quadrature knobs for dwell_time.  Panels are aligned with segment
/// interfaces, so each adaptive Simpson panel sees a C-infinity integrand;
/// the global wavefunction itself is only C^2 across interfaces.
struct QuadratureControl {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  long max_evals = 1000000;
};

/// tau = (1/j_in) int_{x1}^{x2} |psi|^2 dx for a solved composite.
/// Throws QuadratureFailure when the evaluation budget runs out.
DwellReport dwell_time(const multibarrier::GlobalSolution& sol,
                       const CompositePotential& p, double E,
                       const UnitSystem& u, double x1, double x2,
                       const QuadratureControl& q = {});

/// Result of a resonance scan.  A potential that is transparent everywhere
/// (no barrier at all) is reported through the sentinel flag instead of an
/// energy list, since every grid point trivially has T = 1.
struct ResonanceScan {
  bool trivially_transparent = false;
  std::vector<double> energies;
};

/// Scan T(E) on a uniform grid over [e_lo, e_hi], bracket every interior
/// local maximum, refine each bracket by golden-section ascent on T down to
/// a 1e-8-wide energy interval, and keep the maxima with 1 - T < 1e-6.
/// Maximizing T is used instead of root-finding T - 1, which need not cross
/// 1 in floating point.  grid_n >= 2 grid cells; refined duplicates within
/// 1e-8 are merged.
ResonanceScan find_resonances(const CompositePotential& p, double e_lo,
                              double e_hi, const UnitSystem& u, int grid_n,
                              int max_threads = 0);

}  // namespace barrierlab::analysis
