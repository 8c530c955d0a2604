#include "cespdc/spectra.hpp"

#include <cmath>

namespace cespdc {

namespace {

// d(w) d(-w) = 1 / (4 r1^2 r2^2 (x - cos(w tau)) (y - cos(w tau))), real and
// positive below threshold.  Evaluated with x - cos = (x - 1) + (1 - cos) so
// no precision is lost near resonance even close to threshold.
double kernel(const CavityParams& cavity, const PoleParams& pole, double omega) {
  const double u = cavity.roundtrip_amplitude();
  const double half = 0.5 * omega * cavity.tau();
  const double s = std::sin(half);
  const double one_minus_cos = 2.0 * s * s;
  return 1.0 / (4.0 * u * u * (pole.x_minus_1 + one_minus_cos) *
                (pole.y_minus_1 + one_minus_cos));
}

} // namespace

double gamma_fn(const CavityParams& cavity, const GainSetting& gain, double omega) {
  const PoleParams pole = pole_params(cavity, gain);
  const double u = cavity.roundtrip_amplitude();
  const double t1 = cavity.t1();
  const double bracket = (1.0 + u * u) * std::cosh(gain.r()) -
                         2.0 * u * std::cos(omega * cavity.tau());
  return kernel(cavity, pole, omega) * t1 * t1 * std::sinh(gain.r()) * bracket;
}

double upsilon_fn(const CavityParams& cavity, const GainSetting& gain, double omega) {
  const PoleParams pole = pole_params(cavity, gain);
  const double u = cavity.roundtrip_amplitude();
  const double t1 = cavity.t1();
  const double sh = std::sinh(gain.r());
  return kernel(cavity, pole, omega) * t1 * t1 * sh * sh * (1.0 - u * u);
}

SpectralSample spectral_sample(const CavityParams& cavity, const GainSetting& gain,
                               double omega) {
  return SpectralSample{omega, gamma_fn(cavity, gain, omega),
                        upsilon_fn(cavity, gain, omega)};
}

std::complex<double> gamma_assembled(const CavityParams& cavity,
                                     const GainSetting& gain, double omega) {
  const BogoliubovCoeffs p = coeffs(cavity, gain, omega);
  const BogoliubovCoeffs m = coeffs(cavity, gain, -omega);
  return p.A * m.B + p.C * m.D;
}

std::complex<double> upsilon_assembled(const CavityParams& cavity,
                                       const GainSetting& gain, double omega) {
  const BogoliubovCoeffs p = coeffs(cavity, gain, omega);
  const BogoliubovCoeffs m = coeffs(cavity, gain, -omega);
  return p.B * m.B + p.D * m.D;
}

double squeezing_spectrum(const CavityParams& cavity, const GainSetting& gain,
                          double Omega, double theta) {
  const BogoliubovCoeffs c = coeffs(cavity, gain, Omega);
  const std::complex<double> rot = std::exp(std::complex<double>(0.0, theta));
  return std::norm(c.A + rot * c.B) + std::norm(c.C + rot * c.D);
}

} // namespace cespdc
