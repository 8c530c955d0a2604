#include "cespdc/bogoliubov.hpp"

#include <cmath>

namespace cespdc {

namespace {

struct RoundTripTerms {
  std::complex<double> phase;    // e^{-i w tau}
  std::complex<double> d;        // resonant denominator
  std::complex<double> resonant; // e^{-i w tau} cosh(r) - r1 r2
  double ch, sh;                 // cosh(r), sinh(r)
};

// The denominator factors as (E - u e^{r})(E - u e^{-r}) with E = e^{-i w tau}
// and u = r1 r2.  Each factor is assembled cancellation-free:
//   E - u e^{+-r} = (E - 1) + (1 - u e^{+-r}),
//   1 - u e^{+-r} = -expm1(+-r - r_th)      (since log u = -r_th),
//   E - 1         = -2 sin^2(w tau / 2) - i sin(w tau),
// so the near-threshold, near-resonance smallness is computed directly rather
// than as a difference of O(1) quantities.  The numerator E cosh(r) - u is the
// half-sum e^{-r} (E - u e^{r}) / 2 + e^{r} (E - u e^{-r}) / 2.
RoundTripTerms round_trip_terms(const CavityParams& cavity, const GainSetting& gain,
                                double omega) {
  RoundTripTerms t{};
  const double r = gain.r();
  t.ch = std::cosh(r);
  t.sh = std::sinh(r);
  const double half = 0.5 * omega * cavity.tau();
  const double s = std::sin(half);
  t.phase = std::complex<double>(1.0 - 2.0 * s * s, -std::sin(2.0 * half));
  const std::complex<double> e_minus_1(-2.0 * s * s, -std::sin(2.0 * half));
  const std::complex<double> factor_plus = e_minus_1 - std::expm1(r - gain.r_th());
  const std::complex<double> factor_minus = e_minus_1 - std::expm1(-r - gain.r_th());
  t.d = 1.0 / (factor_plus * factor_minus);
  t.resonant = 0.5 * (std::exp(-r) * factor_plus + std::exp(r) * factor_minus);
  return t;
}

} // namespace

std::complex<double> denominator(const CavityParams& cavity, const GainSetting& gain,
                                 double omega) {
  return round_trip_terms(cavity, gain, omega).d;
}

BogoliubovCoeffs coeffs(const CavityParams& cavity, const GainSetting& gain,
                        double omega) {
  const auto t = round_trip_terms(cavity, gain, omega);
  const double r1 = cavity.r1(), r2 = cavity.r2();
  const double t1 = cavity.t1(), t2 = cavity.t2();

  BogoliubovCoeffs c{};
  c.A = t.d * (t1 * t1 * r2) * t.resonant - r1;
  c.B = t.d * t.sh * (t1 * t1 * r2) * t.phase;
  c.C = t.d * (t2 * t1) * t.resonant;
  c.D = t.d * t.sh * (t2 * t1) * t.phase;
  return c;
}

double resonance_magnitude(const CavityParams& cavity, const GainSetting& gain) {
  return std::abs(denominator(cavity, gain, 0.0));
}

} // namespace cespdc
