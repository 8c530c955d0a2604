#ifndef CESPDC_BOGOLIUBOV_HPP
#define CESPDC_BOGOLIUBOV_HPP

#include <complex>

#include "cespdc/core_params.hpp"

namespace cespdc {

/// Output-field Bogoliubov coefficients at one angular frequency:
///   a_out(w) = A(w) a_in(w) + B(w) a_in^+(-w) + C(w) b_in(w) + D(w) b_in^+(-w)
/// They satisfy |A|^2 + |C|^2 - |B|^2 - |D|^2 = 1 at every frequency and are
/// hermitian functions, coeff(-w) = conj(coeff(w)).
struct BogoliubovCoeffs {
  std::complex<double> A;
  std::complex<double> B;
  std::complex<double> C;
  std::complex<double> D;

  /// Commutator-preservation defect; zero up to rounding for valid inputs.
  double symplectic_defect() const {
    return std::norm(A) + std::norm(C) - std::norm(B) - std::norm(D) - 1.0;
  }
};

/// Resonant denominator
///   d(w) = 1 / ( [e^{-i w tau} - r1 r2 cosh(r)]^2 - [r1 r2 sinh(r)]^2 ),
/// finite for all real w below threshold.
std::complex<double> denominator(const CavityParams& cavity, const GainSetting& gain,
                                 double omega);

/// All four coefficients at angular frequency omega (rad/s).  Periodic in
/// omega with period 2 pi / tau; omega is not reduced to one free spectral
/// range.
BogoliubovCoeffs coeffs(const CavityParams& cavity, const GainSetting& gain,
                        double omega);

/// |d(0)|, the on-resonance kernel magnitude.  Grows like 1/(r_th - r)^2 as
/// threshold is approached; callers can use it as a conditioning hint before
/// near-threshold evaluations.
double resonance_magnitude(const CavityParams& cavity, const GainSetting& gain);

} // namespace cespdc

#endif // CESPDC_BOGOLIUBOV_HPP
