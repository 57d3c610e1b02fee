#include "barrierlab/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "barrierlab/errors.hpp"

namespace barrierlab::analysis {

double incoming_current(double E, const UnitSystem& u) {
  if (!(E > 0))
    throw ZeroEnergy("incoming_current: j_in vanishes at E = 0, dwell times diverge");
  return std::sqrt(2.0 * E / u.mass);
}

namespace {

struct SimpsonState {
  std::function<double(double)> f;
  double abs_tol, rel_tol;
  long budget;

  double recurse(double a, double b, double fa, double fm, double fb,
                 double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    if (budget < 2)
      throw QuadratureFailure("dwell quadrature: evaluation budget exhausted");
    budget -= 2;
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (depth > 0 && std::abs(err) <= 15.0 * tol)
      return left + right + err / 15.0;
    if (depth > 48)
      throw QuadratureFailure("dwell quadrature: refinement limit reached");
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }

  double integrate(double a, double b) {
    if (budget < 3) throw QuadratureFailure("dwell quadrature: budget exhausted");
    budget -= 3;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double tol = std::max(abs_tol, rel_tol * std::abs(whole));
    return recurse(a, b, fa, fm, fb, whole, tol, 0);
  }
};

}  // namespace

DwellReport dwell_time(const multibarrier::GlobalSolution& sol,
                       const CompositePotential& p, double E,
                       const UnitSystem& u, double x1, double x2,
                       const QuadratureControl& q) {
  if (!(x1 < x2)) throw InvalidParameter("dwell_time: requires x1 < x2");
  const double j = incoming_current(E, u);

  // interface-aligned panels
  std::vector<double> cuts{x1};
  for (const auto& seg : p.segments()) {
    const double b = seg.interval.lo;
    if (std::isfinite(b) && b > x1 && b < x2) cuts.push_back(b);
  }
  cuts.push_back(x2);
  std::sort(cuts.begin(), cuts.end());

  SimpsonState s;
  s.f = [&](double x) {
    return multibarrier::probability_density(sol, p, E, u, x);
  };
  s.rel_tol = q.rel_tol;
  s.budget = q.max_evals;

  double total = 0.0;
  const double span = x2 - x1;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    s.abs_tol = q.abs_tol * (cuts[i + 1] - cuts[i]) / span;
    total += s.integrate(cuts[i], cuts[i + 1]);
  }

  DwellReport rep;
  rep.x1 = x1;
  rep.x2 = x2;
  rep.j_in = j;
  rep.integral = total;
  rep.tau = total / j;
  rep.units = u;
  return rep;
}

std::string DwellReport::to_json() const {
  std::ostringstream os;
  os.precision(12);
  os << "{\"interval\": [" << x1 << ", " << x2 << "], "
     << "\"length_unit\": \"" << units.length_unit.name << "\", "
     << "\"j_in\": " << j_in << ", "
     << "\"velocity_unit\": \"" << units.length_unit.name << "/"
     << units.time_unit.name << "\", "
     << "\"integral\": " << integral << ", "
     << "\"tau\": " << tau << ", "
     << "\"time_unit\": \"" << units.time_unit.name << "\"}";
  return os.str();
}

namespace {

// Golden-section ascent on T over [lo, hi] down to |hi - lo| <= tol.
double golden_maximize(const std::function<double(double)>& t_of, double lo,
                       double hi, double tol, double& t_best) {
  const double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = t_of(x1), f2 = t_of(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = t_of(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = t_of(x1);
    }
  }
  const double e = 0.5 * (a + b);
  t_best = std::max(f1, f2);
  return e;
}

}  // namespace

ResonanceScan find_resonances(const CompositePotential& p, double e_lo,
                              double e_hi, const UnitSystem& u, int grid_n,
                              int max_threads) {
  if (!(0 < e_lo && e_lo < e_hi))
    throw InvalidParameter("find_resonances: requires 0 < e_lo < e_hi");
  if (grid_n < 2) throw InvalidParameter("find_resonances: grid_n >= 2");

  ResonanceScan out;
  if (p.all_free()) {
    out.trivially_transparent = true;
    return out;
  }

  std::vector<double> grid(grid_n + 1);
  for (int i = 0; i <= grid_n; ++i)
    grid[i] = e_lo + (e_hi - e_lo) * double(i) / grid_n;
  const auto sweep = multibarrier::transmission_sweep(p, grid, u, max_threads);

  auto t_of = [&](double E) { return multibarrier::transmission_at(p, E, u); };

  constexpr double kRefineTol = 1e-8;
  constexpr double kAcceptGap = 1e-6;  // keep maxima with 1 - T below this
  for (int i = 1; i < grid_n; ++i) {
    if (!sweep[i].ok || !sweep[i - 1].ok || !sweep[i + 1].ok) continue;
    if (sweep[i].big_t < sweep[i - 1].big_t || sweep[i].big_t < sweep[i + 1].big_t)
      continue;
    double t_best = 0.0;
    const double e = golden_maximize(t_of, grid[i - 1], grid[i + 1], kRefineTol,
                                     t_best);
    if (1.0 - t_best < kAcceptGap) {
      if (out.energies.empty() || e - out.energies.back() > kRefineTol)
        out.energies.push_back(e);
    }
  }
  return out;
}

}  // namespace barrierlab::analysis
