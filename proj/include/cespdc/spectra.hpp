#ifndef CESPDC_SPECTRA_HPP
#define CESPDC_SPECTRA_HPP

#include "cespdc/bogoliubov.hpp"
#include "cespdc/core_params.hpp"

namespace cespdc {

/// Diagonal spectral correlation functions at one frequency.  gamma_val is the
/// phase-sensitive (anomalous) function, upsilon_val the photon-number one.
/// Both are real, even in omega, and 2 pi / tau periodic.
struct SpectralSample {
  double omega;
  double gamma_val;
  double upsilon_val;
};

/// Gamma(w) = d(w) d(-w) t1^2 sinh(r) [ (1 + r1^2 r2^2) cosh(r) - 2 r1 r2 cos(w tau) ],
/// evaluated through the real pole-parameter form of the kernel.
double gamma_fn(const CavityParams& cavity, const GainSetting& gain, double omega);

/// Upsilon(w) = d(w) d(-w) t1^2 sinh(r)^2 (1 - r1^2 r2^2); strictly positive
/// for r > 0.
double upsilon_fn(const CavityParams& cavity, const GainSetting& gain, double omega);

SpectralSample spectral_sample(const CavityParams& cavity, const GainSetting& gain,
                               double omega);

/// Same functions assembled from the complex Bogoliubov coefficients:
///   Gamma(w)   = A(w) B(-w) + C(w) D(-w)
///   Upsilon(w) = B(w) B(-w) + D(w) D(-w)
/// Independent algebraic route used for cross-checking; returns the (tiny)
/// imaginary residue alongside the real part.
std::complex<double> gamma_assembled(const CavityParams& cavity,
                                     const GainSetting& gain, double omega);
std::complex<double> upsilon_assembled(const CavityParams& cavity,
                                       const GainSetting& gain, double omega);

/// Spectral density of the theta-quadrature of the output field at side-band
/// frequency Omega, normalized so that vacuum gives 1:
///   S(Omega, theta) = |A + e^{i theta} B|^2 + |C + e^{i theta} D|^2.
/// theta = pi is the squeezed quadrature on resonance.
double squeezing_spectrum(const CavityParams& cavity, const GainSetting& gain,
                          double Omega, double theta = 0.0);

} // namespace cespdc

#endif // CESPDC_SPECTRA_HPP
