#include "barrierlab/parabolic.hpp"

#include <cmath>

#include "barrierlab/errors.hpp"
#include "barrierlab/multibarrier.hpp"

namespace barrierlab::parabolic {

namespace {

using specfun::kummer_m;
using specfun::kummer_m_derivative;

const Complex kI(0.0, 1.0);

}  // namespace

double beta_parameter(const ParabolicShape& s, const UnitSystem& u) {
  return std::sqrt(2.0 * u.mass * s.u0) / (u.hbar * s.alpha);
}

ParabolicBasisPoint basis_at(const ParabolicShape& shape, double E,
                             const UnitSystem& u, double x,
                             const SeriesControl& ctl) {
  if (!(E > 0)) throw ZeroEnergy("parabolic basis: requires E > 0");
  const double beta = beta_parameter(shape, u);
  const double k = wavenumber(E, u);
  const double ua = x - shape.gamma;
  if (std::abs(ua) > shape.alpha * (1.0 + 1e-12))
    throw OutOfSupport("parabolic basis: x outside the segment support");

  const double k2b = k * k / beta;
  const double a2b = shape.alpha * shape.alpha * beta;
  const Complex a_e = 0.25 * Complex(1.0, k2b - a2b);
  const Complex a_o = 0.25 * Complex(3.0, k2b - a2b);
  const Complex z = kI * beta * ua * ua;
  const Complex phase = std::exp(-kI * beta * ua * ua / 2.0);
  const double so = std::sqrt(2.0 * beta);

  const Complex me = kummer_m(a_e, 0.5, z, ctl);
  const Complex dme = kummer_m_derivative(a_e, 0.5, z, ctl);
  const Complex mo = kummer_m(a_o, 1.5, z, ctl);
  const Complex dmo = kummer_m_derivative(a_o, 1.5, z, ctl);

  // d/dx [e^{-i b u^2/2} M(z(u))] with z = i b u^2, dz/dx = 2 i b u
  ParabolicBasisPoint out;
  out.psi_e = phase * me;
  out.dpsi_e = phase * (-kI * beta * ua * me + 2.0 * kI * beta * ua * dme);
  out.psi_o = so * ua * phase * mo;
  out.dpsi_o =
      so * phase * (mo + ua * (-kI * beta * ua * mo + 2.0 * kI * beta * ua * dmo));
  return out;
}

BasisPair basis_pair_at(const ParabolicShape& shape, double E,
                        const UnitSystem& u, double x) {
  const ParabolicBasisPoint b = basis_at(shape, E, u, x);
  return {b.psi_e, b.dpsi_e, b.psi_o, b.dpsi_o};
}

namespace {

// Fallback: single-barrier composite through the generic matching solver.
SingleBarrierScattering direct_solve(const ParabolicShape& shape, double E,
                                     const UnitSystem& u,
                                     SingleBarrierScattering base) {
  const auto p = CompositePotential::from_barriers({parabolic_segment(shape)}, u);
  const auto g = multibarrier::solve(p, E, u);
  base.r = g.r;
  base.t = g.t;
  base.a_coef = g.coeffs.at(0).first;
  base.b_coef = g.coeffs.at(0).second;
  base.big_r = g.big_r;
  base.big_t = g.big_t;
  base.used_direct_solve = true;
  return base;
}

}  // namespace

SingleBarrierScattering scattering_single(const ParabolicShape& shape, double E,
                                          const UnitSystem& u) {
  if (!(E > 0)) throw ZeroEnergy("scattering_single: requires E > 0");
  const double k = wavenumber(E, u);
  const double a = shape.alpha;
  const ParabolicBasisPoint edge = basis_at(shape, E, u, shape.gamma + a);

  SingleBarrierScattering out;
  const double scale =
      std::max({std::abs(edge.psi_e), std::abs(edge.psi_o),
                a * std::abs(edge.dpsi_e), a * std::abs(edge.dpsi_o)});
  const Complex le_c = a * edge.dpsi_e / edge.psi_e;
  const Complex lo_c = a * edge.dpsi_o / edge.psi_o;
  out.l_e = le_c.real();
  out.l_o = lo_c.real();

  if (std::abs(edge.psi_e) < 1e-12 * scale || std::abs(edge.psi_o) < 1e-12 * scale)
    return direct_solve(shape, E, u, out);

  const double ka = k * a;
  const Complex qe = Complex(out.l_e, ka) / Complex(out.l_e, -ka);
  const Complex qo = Complex(out.l_o, ka) / Complex(out.l_o, -ka);
  const Complex ph = std::exp(Complex(0.0, -2.0 * ka));
  // barrier-frame amplitudes
  const Complex r0 = -0.5 * ph * (qe + qo);
  const Complex t0 = -0.5 * ph * (qe - qo);

  const double den = (out.l_e * out.l_e + ka * ka) * (out.l_o * out.l_o + ka * ka);
  const double leo = out.l_e * out.l_o + ka * ka;
  out.big_r = leo * leo / den;
  out.big_t = ka * ka * (out.l_e - out.l_o) * (out.l_e - out.l_o) / den;

  const Complex eika = std::exp(Complex(0.0, ka));
  const Complex emika = std::exp(Complex(0.0, -ka));
  const Complex a0 = ((t0 + r0) * eika + emika) / (2.0 * edge.psi_e);
  const Complex b0 = ((t0 - r0) * eika - emika) / (2.0 * edge.psi_o);

  // shift from the barrier frame to the global frame: a barrier centered at
  // gamma sees the incident wave with an extra phase e^{i k gamma}
  const Complex shift = std::exp(Complex(0.0, k * shape.gamma));
  out.r = r0 * shift * shift;
  out.t = t0;
  out.a_coef = a0 * shift;
  out.b_coef = b0 * shift;
  return out;
}

Complex wavefunction_single(const ParabolicShape& shape, double E,
                            const UnitSystem& u,
                            const SingleBarrierScattering& s, double x) {
  const double k = wavenumber(E, u);
  const Complex eikx = std::exp(Complex(0.0, k * x));
  if (x < shape.gamma - shape.alpha) return eikx + s.r * std::exp(Complex(0.0, -k * x));
  if (x > shape.gamma + shape.alpha) return s.t * eikx;
  const ParabolicBasisPoint b = basis_at(shape, E, u, x);
  return s.a_coef * b.psi_e + s.b_coef * b.psi_o;
}

}  // namespace barrierlab::parabolic
