#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "barrierlab/potential.hpp"
#include "barrierlab/types.hpp"
#include "barrierlab/units.hpp"

namespace barrierlab::multibarrier {

enum class RegionKind { PlaneWaves, Parabolic, Sech };

/// One tiling region with an evaluator for its solution basis.  Free regions
/// use plane waves e^{+-ikx}; barrier regions use the segment's exact pair,
/// always evaluated relative to the segment center so series arguments stay
/// small.
struct RegionBasis {
  int index = 0;
  Interval interval;
  RegionKind kind = RegionKind::PlaneWaves;
  std::function<BasisPair(double)> eval;
};

/// Global scattering solution for a unit-amplitude wave incident from the
/// left: psi = e^{ikx} + r e^{-ikx} in the leftmost region, t e^{ikx} in the
/// rightmost, c1 f1 + c2 f2 in each interior region.
struct GlobalSolution {
  Complex r, t;
  std::vector<std::pair<Complex, Complex>> coeffs;  // per interior region
  double big_r = 0.0, big_t = 0.0;
  double residual = 0.0;        // max |A x - b| over all matching equations
  double condition = 0.0;       // 1-norm condition estimate of the system
};

/// Region decomposition used by the solver and by the evaluators below.
std::vector<RegionBasis> build_regions(const CompositePotential& p, double E,
                                       const UnitSystem& u);

/// Assemble and solve the 2(n-1) x 2(n-1) C^1 interface-matching system for a
/// validated composite whose outermost segments are free.  The full dense
/// complex system is solved directly with partial pivoting (region counts are
/// small, and the direct solve sidesteps transfer-product growth); a 1-norm
/// condition estimate above 1e12 raises SingularSystem.  An all-free
/// composite short-circuits to r = 0, t = 1.
GlobalSolution solve(const CompositePotential& p, double E, const UnitSystem& u);

/// psi(x) and psi'(x) of the solved scattering state.
Complex wavefunction(const GlobalSolution& sol, const CompositePotential& p,
                     double E, const UnitSystem& u, double x);
Complex wavefunction_derivative(const GlobalSolution& sol,
                                const CompositePotential& p, double E,
                                const UnitSystem& u, double x);

/// |psi(x)|^2 assembled piecewise.
double probability_density(const GlobalSolution& sol, const CompositePotential& p,
                           double E, const UnitSystem& u, double x);

/// Probability current (hbar/m) Im(psi* psi'); x-independent for a stationary
/// state, so sampling it per region is a solve-quality diagnostic.
double probability_current(const GlobalSolution& sol, const CompositePotential& p,
                           double E, const UnitSystem& u, double x);

struct SweepPoint {
  double energy = 0.0;
  double big_t = 0.0;
  double big_r = 0.0;
  bool ok = false;
  std::string error;  // failure note when !ok; sweeps never abort on a point
};

/// Per-energy solves over a grid, order-preserving.  max_threads = 0 picks
/// the hardware count; results are written slot-by-slot so the output is
/// deterministic regardless of scheduling.  Dispatches to the closed-form
/// Landau result when the composite is a single full-line sech^2 barrier.
std::vector<SweepPoint> transmission_sweep(const CompositePotential& p,
                                           const std::vector<double>& energies,
                                           const UnitSystem& u,
                                           int max_threads = 0);

/// T(E) for any supported composite (free line -> 1, single full-line landau
/// -> closed form, otherwise interface matching).
double transmission_at(const CompositePotential& p, double E, const UnitSystem& u);

}  // namespace barrierlab::multibarrier
