#include "barrierlab/landau.hpp"

#include <cmath>

#include "barrierlab/errors.hpp"
#include "barrierlab/gamma.hpp"

namespace barrierlab::landau {

namespace {

using specfun::gauss_f;
using specfun::gauss_f_derivative;
using specfun::log_gamma;

const Complex kI(0.0, 1.0);

bool near_integer(Complex v, double tol = 1e-12) {
  return std::abs(v.imag()) <= tol &&
         std::abs(v.real() - std::round(v.real())) <= tol;
}

// ((1+xi)/(1-xi))^{mu/2} via real logs; sign < 0 gives the reciprocal power.
Complex half_power(Complex mu, double xi, int sign) {
  const Complex e = 0.5 * mu * (std::log1p(xi) - std::log1p(-xi));
  return std::exp(double(sign) * e);
}

}  // namespace

Complex legendre_degree(double u0, double alpha_inv, const UnitSystem& u) {
  const double q =
      8.0 * u.mass * u0 / (u.hbar * u.hbar * alpha_inv * alpha_inv);
  const Complex root = std::sqrt(Complex(1.0 - q, 0.0));
  return 0.5 * (root - 1.0);
}

LegendreValue legendre_p_with_derivative(const LegendreParams& p,
                                         const SeriesControl& ctl) {
  const double xi = p.xi;
  if (!(xi > -1.0 && xi < 1.0))
    throw InvalidParameter("legendre_p: xi must lie in (-1, 1)");
  const Complex a = -p.nu;
  const Complex b = p.nu + 1.0;
  const double om = 1.0 - xi * xi;
  LegendreValue out;
  if (xi >= 0.0) {
    const double w = 0.5 * (1.0 - xi);
    const Complex c = 1.0 - p.mu;
    const Complex pref = half_power(p.mu, xi, +1) * std::exp(-log_gamma(c));
    const Complex f = gauss_f(a, b, c, w, ctl);
    const Complex df = gauss_f_derivative(a, b, c, w, ctl);
    out.p = pref * f;
    out.dp_dxi = pref * (p.mu / om * f - 0.5 * df);
  } else {
    const double w = 0.5 * (1.0 + xi);
    const Complex c1 = std::exp(log_gamma(-p.mu) - log_gamma(1.0 + p.nu - p.mu) -
                                log_gamma(-p.nu - p.mu));
    const Complex c2 =
        std::sin(kPi * p.nu) / kPi * std::exp(log_gamma(p.mu));
    const Complex pp = half_power(p.mu, xi, +1);
    const Complex pm = half_power(p.mu, xi, -1);
    const Complex f1 = gauss_f(a, b, 1.0 + p.mu, w, ctl);
    const Complex df1 = gauss_f_derivative(a, b, 1.0 + p.mu, w, ctl);
    const Complex f2 = gauss_f(a, b, 1.0 - p.mu, w, ctl);
    const Complex df2 = gauss_f_derivative(a, b, 1.0 - p.mu, w, ctl);
    out.p = c1 * pp * f1 - c2 * pm * f2;
    out.dp_dxi = c1 * (pp * p.mu / om * f1 + pp * 0.5 * df1) -
                 c2 * (pm * (-p.mu) / om * f2 + pm * 0.5 * df2);
  }
  return out;
}

Complex legendre_p(const LegendreParams& p, const SeriesControl& ctl) {
  return legendre_p_with_derivative(p, ctl).p;
}

double landau_transmission_closed_form(const SechShape& shape, double E,
                                       const UnitSystem& u) {
  const double a = shape.alpha_inv;
  const double q = 8.0 * u.mass * shape.u0 / (u.hbar * u.hbar * a * a);
  const double kappa = wavenumber(E, u) / a;
  const double c =
      q < 1.0 ? std::cos(kPi * std::sqrt(1.0 - q)) : std::cosh(kPi * std::sqrt(q - 1.0));
  if (kPi * kappa > 20.0) {
    // cosh(2 pi kappa) would dominate; rearrange as 1/(1 + small) to keep
    // digits and avoid overflow at very large kappa
    const double em = std::exp(-2.0 * kPi * kappa);
    return 1.0 / (1.0 + 2.0 * em * (c + 1.0) / ((1.0 - em) * (1.0 - em)));
  }
  const double sh = std::sinh(kPi * kappa);
  return 2.0 * sh * sh / (c + std::cosh(2.0 * kPi * kappa));
}

LandauScattering landau_scattering(const SechShape& shape, double E,
                                   const UnitSystem& u) {
  if (shape.beta_shift != 0.0)
    throw InvalidParameter("landau_scattering: full-line form has beta_shift = 0");
  if (!(E > 0)) throw ZeroEnergy("landau_scattering: requires E > 0");
  const double a = shape.alpha_inv;
  const Complex nu = legendre_degree(shape.u0, a, u);
  const Complex ika = kI * wavenumber(E, u) / a;

  Complex lg_pair, lg_mika, lg_ika, lg_1mika;
  try {
    lg_pair = log_gamma(-nu - ika) + log_gamma(1.0 + nu - ika);
    lg_mika = log_gamma(-ika);
    lg_ika = log_gamma(ika);
    lg_1mika = log_gamma(1.0 - ika);
  } catch (const PoleError& e) {
    throw GammaPole(std::string("landau_scattering: ") + e.what());
  }

  LandauScattering out;
  out.normalization = std::exp(lg_pair - lg_mika);
  out.t = std::exp(lg_pair - lg_1mika - lg_mika);
  out.r = -std::exp(lg_pair + lg_ika - lg_mika) * std::sin(kPi * nu) / kPi;
  out.big_t = std::norm(out.t);
  out.big_r = std::norm(out.r);

  const double t_closed = landau_transmission_closed_form(shape, E, u);
  if (std::abs(out.big_t - t_closed) > 1e-9)
    throw NonConvergence(
        "landau_scattering: Gamma-formula T disagrees with the closed form");
  return out;
}

BasisPair sech_basis_at(const SechShape& shape, double E, const UnitSystem& u,
                        double x, const SeriesControl& ctl) {
  if (!(E > 0)) throw ZeroEnergy("sech basis: requires E > 0");
  if (!(shape.beta_shift > 0))
    throw InvalidParameter("sech basis: compact form requires beta_shift > 0");
  const double a = shape.alpha_inv;
  const double w = sech_support_half_width(shape, u);
  if (std::abs(x - shape.gamma) > w * (1.0 + 1e-12))
    throw OutOfSupport("sech basis: x outside the segment support");

  const double k = wavenumber(E, u);
  const Complex mu =
      kI * std::sqrt(k * k + shape.beta_shift * shape.beta_shift) / a;
  if (near_integer(mu))
    throw WronskianCollapse("sech basis: integer order, basis pair degenerate");
  const Complex nu = legendre_degree(shape.u0, a, u);

  const double xi = std::tanh(a * (x - shape.gamma));
  const double dxi_dx = a * (1.0 - xi * xi);
  const LegendreValue p1 = legendre_p_with_derivative({mu, nu, xi}, ctl);
  const LegendreValue p2 = legendre_p_with_derivative({-mu, nu, xi}, ctl);
  return {p1.p, p1.dp_dxi * dxi_dx, p2.p, p2.dp_dxi * dxi_dx};
}

}  // namespace barrierlab::landau
