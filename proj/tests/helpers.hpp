#pragma once

// Shared fixtures for the integration-style suites.

#include <cmath>

#include "barrierlab/multibarrier.hpp"
#include "barrierlab/potential.hpp"

namespace barrierlab::testing {

inline CompositePotential touching_double_parabola(const UnitSystem& u,
                                                   double u0 = 0.125,
                                                   double alpha = 10.0) {
  return CompositePotential::from_barriers(
      {parabolic_segment({alpha, u0, -alpha}),
       parabolic_segment({alpha, u0, alpha})},
      u);
}

inline CompositePotential mixed_double_barrier(const UnitSystem& u) {
  // parabola on the left, compact shifted sech on the right
  return CompositePotential::from_barriers(
      {parabolic_segment({1.0, 1.0, -2.0}),
       sech_segment({1.0, 1.0, 0.5, 2.5}, u)},
      u);
}

struct SmoothnessReport {
  double worst_c1 = 0.0;  // max value/derivative jump across an interface
  double worst_c2 = 0.0;  // max second-derivative mismatch / its error bound
};

/// C1: psi and psi' evaluated from both neighbouring regions at each finite
/// interface must agree.  C2: the one-sided second derivatives, probed by
/// centered differences taken strictly inside each region at x -+ 2h, must
/// agree across the interface.  psi is C^2 but not C^3 there (U' jumps), so
/// the honest error budget for the comparison is
///   4h |psi'''| + O(h^2) truncation + eps/h^2 rounding,
/// with |psi'''| <= pref |U'| |psi| + |pref U - k^2| |psi'| from
/// differentiating the equation; worst_c2 reports the mismatch in units of
/// that budget (a wrong or non-smooth solution overshoots it by orders of
/// magnitude).
inline SmoothnessReport interface_smoothness(
    const multibarrier::GlobalSolution& sol, const CompositePotential& p,
    double E, const UnitSystem& u, double h_frac = 1e-4) {
  SmoothnessReport rep;
  const double k = wavenumber(E, u);
  const double pref = 2.0 * u.mass / (u.hbar * u.hbar);
  const auto& segs = p.segments();
  auto psi = [&](double xx) {
    return multibarrier::wavefunction(sol, p, E, u, xx);
  };
  for (size_t i = 0; i + 1 < segs.size(); ++i) {
    const double x = segs[i + 1].interval.lo;
    if (!std::isfinite(x)) continue;
    const double off = 1e-12 * std::max(1.0, std::abs(x));
    const Complex below = psi(x - off);
    const Complex above = psi(x + off);
    const Complex dbelow =
        multibarrier::wavefunction_derivative(sol, p, E, u, x - off);
    const Complex dabove =
        multibarrier::wavefunction_derivative(sol, p, E, u, x + off);
    const double scale =
        std::max({1.0, std::abs(below), std::abs(dbelow) / std::max(k, 1.0)});
    rep.worst_c1 = std::max(rep.worst_c1, std::abs(below - above) / scale);
    rep.worst_c1 =
        std::max(rep.worst_c1,
                 std::abs(dbelow - dabove) / (scale * std::max(k, 1.0)));

    double width = kInf;
    if (segs[i].interval.finite()) width = segs[i].interval.width();
    if (segs[i + 1].interval.finite())
      width = std::min(width, segs[i + 1].interval.width());
    if (!std::isfinite(width)) width = 1.0;
    const double h = h_frac * width;

    auto d2_at = [&](double xc) {
      return (psi(xc + h) - 2.0 * psi(xc) + psi(xc - h)) / (h * h);
    };
    const Complex d2_left = d2_at(x - 2.0 * h);
    const Complex d2_right = d2_at(x + 2.0 * h);

    const double du = std::max(std::abs(evaluate(p, x + h) - evaluate(p, x)),
                               std::abs(evaluate(p, x) - evaluate(p, x - h))) /
                      h;
    const double s3 = pref * du * std::abs(below) +
                      std::abs(pref * evaluate(p, x) - k * k) * std::abs(dbelow);
    const double budget = 4.0 * h * s3 +
                          h * h * (k * k + pref) * (k * k + pref) *
                              std::abs(below) +
                          16.0 * 2.2e-16 * std::abs(below) / (h * h) + 1e-300;
    rep.worst_c2 = std::max(rep.worst_c2, std::abs(d2_left - d2_right) / budget);

    // each one-sided limit also matches what the equation says psi'' must be
    for (double xc : {x - 2.0 * h, x + 2.0 * h}) {
      const Complex psi_c = psi(xc);
      const Complex expect = (pref * evaluate(p, xc) - k * k) * psi_c;
      const double curvature = (k * k + pref * p.max_peak());
      const double ode_budget = h * h * curvature * curvature * std::abs(psi_c) +
                                16.0 * 2.2e-16 * std::abs(psi_c) / (h * h) +
                                1e-300;
      rep.worst_c2 =
          std::max(rep.worst_c2, std::abs(d2_at(xc) - expect) / ode_budget);
    }
  }
  return rep;
}

}  // namespace barrierlab::testing
