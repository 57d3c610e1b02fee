#pragma once

#include <filesystem>
#include <functional>
#include <vector>

#include "barrierlab/potential.hpp"
#include "barrierlab/types.hpp"
#include "barrierlab/units.hpp"

namespace barrierlab::oracle {

/// Numerical referee for the closed-form results.  Deliberately simple: a
/// fixed-step classical RK4 sweep from the right edge to the left with
/// Richardson step-halving until the reflected and transmitted amplitudes
/// settle.  No closed-form solution enters anywhere.
struct IntegratorConfig {
  double step = 0.0;       // initial step; 0 -> narrowest segment width / 400
  double rel_tol = 1e-9;   // halving stops when r and t move less than this
  double domain_pad = 0.0; // extra free-region distance beyond the support
  int max_halvings = 14;
};

struct ScatteringEstimate {
  Complex r, t;
  double big_r = 0.0, big_t = 0.0;
  double step_used = 0.0;
  int halvings = 0;
};

/// Integrate psi'' = (2 m U/hbar^2 - k^2) psi backward from x_hi (where the
/// state is exactly the transmitted wave e^{ikx}) to x_lo, then split the
/// left-edge state into incident and reflected plane waves and normalize to
/// unit incident amplitude -- a 2x2 decomposition instead of a shooting
/// search.  `breakpoints` are stepped on exactly, so each RK4 step sees a
/// smooth integrand and the scheme keeps its fourth order on piecewise-smooth
/// potentials.  Throws NonConvergence when the halving budget runs out and
/// StiffnessWarning if the step underflows.
ScatteringEstimate integrate_scattering_fn(const std::function<double(double)>& U,
                                           const std::vector<double>& breakpoints,
                                           double x_lo, double x_hi, double E,
                                           const UnitSystem& u,
                                           IntegratorConfig cfg = {});

/// Composite front end: the integration window is the barrier support padded
/// by cfg.domain_pad, and every segment boundary is a breakpoint.
ScatteringEstimate integrate_scattering(const CompositePotential& p, double E,
                                        const UnitSystem& u,
                                        IntegratorConfig cfg = {});

/// Tabulated potential with linear interpolation, for shapes with no exact
/// solution.  The sample abscissae double as integrator breakpoints.
struct SampledPotential {
  std::vector<double> x, value;

  double operator()(double xq) const;
  static SampledPotential load_csv(const std::filesystem::path& file);
};

ScatteringEstimate integrate_scattering(const SampledPotential& sp, double E,
                                        const UnitSystem& u,
                                        IntegratorConfig cfg = {});

/// Observed convergence order from the transmitted amplitude at steps h,
/// h/2, h/4: log2(|t_h - t_{h/2}| / |t_{h/2} - t_{h/4}|).  About 4 on smooth
/// potentials; degrades when the potential jumps between breakpoints.  The
/// complex amplitude is the right functional here: |t|^2 superconverges on
/// symmetric barriers because the leading RK4 error enters t as a phase.
double convergence_order(const CompositePotential& p, double E,
                         const UnitSystem& u, IntegratorConfig cfg = {});
double convergence_order_fn(const std::function<double(double)>& U,
                            const std::vector<double>& breakpoints, double x_lo,
                            double x_hi, double E, const UnitSystem& u,
                            double h0);

}  // namespace barrierlab::oracle
