#include "barrierlab/series.hpp"

#include <cmath>
#include <string>

#include "barrierlab/errors.hpp"

namespace barrierlab::specfun {

namespace {

// Terms are accumulated in extended precision: for strongly oscillatory
// parameter ranges (|a| |z| approaching ~100) the largest term exceeds the
// sum by up to ~1e8, and the cancellation would eat half of a double's
// digits.  long double keeps the loss below ~1e-12 relative across the
// documented budget.
using LComplex = std::complex<long double>;

bool is_nonpositive_integer(Complex v, double tol = 1e-12) {
  if (std::abs(v.imag()) > tol) return false;
  double r = v.real();
  return r < 0.5 && std::abs(r - std::round(r)) <= tol;
}

void check_finite(Complex v, const char* who) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw NonConvergence(std::string(who) + ": non-finite value escaped the series");
}

// Shared summation loop: `next` maps (n, term) -> term for n+1.
template <typename Next>
Complex sum_series(const SeriesControl& ctl, const char* who, Next next) {
  if (ctl.rel_tol <= 0 || ctl.max_terms < 1)
    throw InvalidParameter(std::string(who) + ": bad SeriesControl");
  LComplex sum(1.0L);
  LComplex term(1.0L);
  int small_streak = 0;
  for (int n = 0; n < ctl.max_terms; ++n) {
    term = next(n, term);
    sum += term;
    if (std::abs(term) <= (long double)ctl.rel_tol * std::abs(sum)) {
      if (++small_streak >= 2) {
        const Complex out(double(sum.real()), double(sum.imag()));
        check_finite(out, who);
        return out;
      }
    } else {
      small_streak = 0;
    }
  }
  throw NonConvergence(std::string(who) + ": max_terms reached before tail bound");
}

}  // namespace

Complex kummer_m(Complex a, Complex b, Complex z, const SeriesControl& ctl) {
  if (is_nonpositive_integer(b))
    throw InvalidParameter("kummer_m: b is a non-positive integer");
  if (std::abs(z) > kKummerMaxAbsZ)
    throw InvalidParameter("kummer_m: |z| exceeds the convergence budget");
  const LComplex la(a.real(), a.imag()), lb(b.real(), b.imag()),
      lz(z.real(), z.imag());
  return sum_series(ctl, "kummer_m", [&](int n, LComplex t) {
    return t * (la + (long double)n) / (lb + (long double)n) * lz /
           (long double)(n + 1);
  });
}

Complex kummer_m_derivative(Complex a, Complex b, Complex z,
                            const SeriesControl& ctl) {
  return a / b * kummer_m(a + 1.0, b + 1.0, z, ctl);
}

Complex gauss_f(Complex a, Complex b, Complex c, Complex z,
                const SeriesControl& ctl) {
  if (is_nonpositive_integer(c))
    throw InvalidParameter("gauss_f: c is a non-positive integer");
  if (std::abs(z) > kGaussMaxAbsZ)
    throw NonConvergence("gauss_f: |z| too close to 1 for the series");
  const LComplex la(a.real(), a.imag()), lb(b.real(), b.imag()),
      lc(c.real(), c.imag()), lz(z.real(), z.imag());
  return sum_series(ctl, "gauss_f", [&](int n, LComplex t) {
    return t * (la + (long double)n) * (lb + (long double)n) /
           ((lc + (long double)n) * (long double)(n + 1)) * lz;
  });
}

Complex gauss_f_derivative(Complex a, Complex b, Complex c, Complex z,
                           const SeriesControl& ctl) {
  return a * b / c * gauss_f(a + 1.0, b + 1.0, c + 1.0, z, ctl);
}

namespace {

// Both weber series share the same two-term state update once the terms are
// factorial-scaled.  `u` and `v` are consecutive scaled terms.
double weber_sum(double a, double z, const SeriesControl& ctl, bool odd) {
  if (ctl.rel_tol <= 0 || ctl.max_terms < 1)
    throw InvalidParameter("weber: bad SeriesControl");
  const long double la = a;
  const long double z2 = (long double)z * z;
  long double u = odd ? z : 1.0L;                  // term n = 0
  long double v = la * z2 * u / (odd ? 6.0L : 2.0L);  // term n = 1
  long double sum = u + v;
  int small_streak = std::abs(double(v)) <= ctl.rel_tol * std::abs(double(sum)) ? 1 : 0;
  for (int n = 0; n < ctl.max_terms; ++n) {
    const long double d0 = odd ? (2 * n + 4) : (2 * n + 3);
    const long double d1 = odd ? (2 * n + 5) : (2 * n + 4);
    const long double next =
        z2 / (d0 * d1) * (la * v - z2 * (n + 1) / (2.0L * (2 * n + 2)) * u);
    u = v;
    v = next;
    sum += next;
    if (std::abs(next) <= (long double)ctl.rel_tol * std::abs(sum)) {
      if (++small_streak >= 2) {
        if (!std::isfinite(double(sum)))
          throw NonConvergence("weber: non-finite value escaped the series");
        return double(sum);
      }
    } else {
      small_streak = 0;
    }
  }
  throw NonConvergence("weber: max_terms reached before tail bound");
}

}  // namespace

double weber_even(double a, double z, const SeriesControl& ctl) {
  return weber_sum(a, z, ctl, /*odd=*/false);
}

double weber_odd(double a, double z, const SeriesControl& ctl) {
  return weber_sum(a, z, ctl, /*odd=*/true);
}

}  // namespace barrierlab::specfun
