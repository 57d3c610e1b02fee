#include "barrierlab/gamma.hpp"

#include <cmath>

#include "barrierlab/errors.hpp"

namespace barrierlab::specfun {

namespace {

// Lanczos g = 7 coefficient set (Godfrey's fit, as circulated with the
// classic Numerical-Recipes-style implementations).
constexpr int kG = 7;
constexpr double kCoef[kG + 2] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

const Complex kI(0.0, 1.0);

// log(sin(pi z)) via e^{+-i pi z} factored so the exponential with the large
// magnitude is pulled out in log form.
Complex log_sin_pi(Complex z) {
  const Complex piz = kPi * z;
  if (z.imag() > 0.0) {
    return kI * kPi / 2.0 - std::log(2.0) - kI * piz +
           std::log(1.0 - std::exp(2.0 * kI * piz));
  }
  return -kI * kPi / 2.0 - std::log(2.0) + kI * piz +
         std::log(1.0 - std::exp(-2.0 * kI * piz));
}

Complex lanczos_log_gamma(Complex z) {
  // valid for Re z >= 0.5
  z -= 1.0;
  Complex x = kCoef[0];
  for (int i = 1; i < kG + 2; ++i) x += kCoef[i] / (z + double(i));
  const Complex t = z + (kG + 0.5);
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

Complex log_gamma(Complex z) {
  if (std::abs(z.imag()) < 1e-14) {
    const double r = z.real();
    if (r <= 0.5 && std::abs(r - std::round(r)) < 1e-14)
      throw PoleError("log_gamma: pole at non-positive integer");
  }
  if (z.real() < 0.5)
    return std::log(kPi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
  return lanczos_log_gamma(z);
}

Complex gamma_fn(Complex z) { return std::exp(log_gamma(z)); }

}  // namespace barrierlab::specfun
