#ifndef CESPDC_SINGLE_MODE_HPP
#define CESPDC_SINGLE_MODE_HPP

#include <complex>

#include "cespdc/core_params.hpp"

namespace cespdc {

/// Lorentzian-line (Lu-Ou style) single-mode model: intensity decay rates of
/// the output coupler and loss channels, and the parametric gain rate.
/// Sub-threshold means epsilon < (gamma1 + gamma2) / 2.
struct SingleModeParams {
  double gamma1;
  double gamma2;
  double epsilon;
  double total_decay() const { return gamma1 + gamma2; }
};

/// Rate mapping from round-trip quantities:
///   gamma_i = -2 log(r_i) / tau,   epsilon = r / tau.
/// gamma_i is the intensity decay rate (amplitude survives r_i per round trip,
/// so intensity survives r_i^2 = e^{-gamma_i tau}); epsilon matches the
/// single-pass amplitude gain e^{r} per round trip.  With this mapping the
/// round-trip threshold r = r_th lands exactly on the rate threshold
/// epsilon = (gamma1 + gamma2) / 2.
SingleModeParams from_cavity(const CavityParams& cavity, const GainSetting& gain);

/// Closed-form single-mode G2:
///   G2(T) = (pi/2) gamma1^2 eps^2 [ (f- + f+)^2 + (f- - f+)^2 ]
///           + (pi/2) gamma1^2 eps^2 (f-(0) - f+(0))^2
/// with f+- = exp(-|T| (gamma1 + gamma2 +- 2 eps) / 2) / (gamma1 + gamma2 +- 2 eps).
/// Even in T, strictly decreasing in |T| toward the constant accidental term.
double g2_single(const SingleModeParams& params, double T);

/// Finite mode count: g2_single(T) * sin^2((2N+1) pi T / tau) / sin^2(pi T / tau),
/// with the removable singularity at T = m tau evaluated as (2N+1)^2.
double g2_multi_finite_n(const SingleModeParams& params, int N, double T,
                         double tau);

/// Single-mode Bogoliubov coefficients (verification-only route; g2_single is
/// re-derived from these through the same Gamma/Upsilon pipeline used by the
/// multimode calculation and must agree with the closed form).
struct SingleModeCoeffs {
  std::complex<double> A;
  std::complex<double> B;
  std::complex<double> C;
  std::complex<double> D;
};
SingleModeCoeffs single_mode_coeffs(const SingleModeParams& params, double omega);

/// Gamma(w) and Upsilon(w) assembled from single_mode_coeffs.
double gamma_single(const SingleModeParams& params, double omega);
double upsilon_single(const SingleModeParams& params, double omega);

/// g2_single re-assembled numerically: continuous Fourier transforms
/// (1/sqrt(2 pi)) Int Gamma(w) e^{-i w T} dw of the spectral functions built
/// from the coefficients, then combined as {F[Gamma]}^2 + {F[Upsilon]}^2 +
/// {F[Upsilon](0)}^2.  Independent of the f+- closed form.
double g2_single_via_spectra(const SingleModeParams& params, double T);

/// Comparison of the T=0-normalized multimode comb envelope against the
/// T=0-normalized single-mode model evaluated at the comb lags.
struct ModelComparison {
  double max_deviation;   // max_k |env_multi(k) - env_single(k)|, curves
                          // normalized to 1 at T = 0
  int worst_lag;
  double background_multi;  // asymptotic envelope levels
  double background_single;
};
ModelComparison compare_models(const CavityParams& cavity, const GainSetting& gain,
                               int k_cap = 10000);

} // namespace cespdc

#endif // CESPDC_SINGLE_MODE_HPP
