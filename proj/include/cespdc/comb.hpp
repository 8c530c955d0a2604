#ifndef CESPDC_COMB_HPP
#define CESPDC_COMB_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "cespdc/core_params.hpp"

namespace cespdc {

/// Fourier-cosine coefficients F(k) of the resonant kernel d(w)d(-w),
/// k = 0 .. k_max.  Positive, strictly decreasing, geometric tail with ratio
/// rho_x = r1 r2 e^{r}.
struct FourierCoeffs {
  std::vector<double> values;
  int k_max() const { return static_cast<int>(values.size()) - 1; }
};

/// Multimode G2(T): delta-comb weight w_k at each lag T = k tau plus the
/// lag-independent accidental background b.  The two live in different
/// distributional classes (delta weights vs a constant), so they are only
/// combined by normalization or Lorentzian rendering.
struct CorrelationComb {
  std::vector<double> weights; // w_0 .. w_k_max, symmetric under k -> -k
  double background = 0.0;
  double tau = 1.0;
  double gain_fraction = 0.0;
  int k_max() const { return static_cast<int>(weights.size()) - 1; }
};

/// Closed-form F(k) from the partial-fraction decomposition of the kernel:
///   F(k) = [rho_x^k / sqrt(x^2-1) - rho_y^k / sqrt(y^2-1)] / (2 r1^2 r2^2 (y - x))
/// with the degenerate x = y (r = 0) case handled by the double-pole limit.
double f_closed(const PoleParams& pole, const CavityParams& cavity, int k);

/// Result of the adaptive-quadrature evaluation of the defining integral
///   F(k) = (2/pi) Int_0^pi d(w) d(-w) cos(k w tau) d(w tau).
/// Independent oracle for f_closed: the integrand is assembled from the
/// complex denominator, sharing no code with the pole-parameter route.
struct QuadratureResult {
  double value;
  double error_estimate;
};
QuadratureResult f_quadrature(const CavityParams& cavity, const GainSetting& gain,
                              int k, double epsabs = 1e-13, double epsrel = 1e-11);

/// F(0) .. F(k_max) via f_closed.
FourierCoeffs fourier_coeffs(const CavityParams& cavity, const GainSetting& gain,
                             int k_max);

/// Comb weights and background:
///   w_k = t1^4 sinh^2(r) [ (1+r1^2 r2^2) cosh(r) F(|k|)
///                          - r1 r2 F(|k|+1) - r1 r2 F(|k|-1) ]^2
///         + t1^4 sinh^4(r) (1 - r1^2 r2^2)^2 F(|k|)^2
///   b   = t1^4 sinh^4(r) (1 - r1^2 r2^2)^2 F(0)^2
/// (F(-1) means F(1)).  k_max < 0 selects the smallest k with
/// w_k / w_0 < 1e-12, capped at hard_limit.
CorrelationComb g2_comb(const CavityParams& cavity, const GainSetting& gain,
                        int k_max = -1, int hard_limit = 10000);

/// Envelope through the comb peaks, (w_k + b) / (w_0 + b), at T = k tau.
/// Throws std::domain_error for the degenerate r = 0 comb (all weights zero).
std::vector<std::pair<double, double>>
g2_envelope_normalized(const CorrelationComb& comb);

/// Plot-ready trace: each delta peak replaced by a unit-area Lorentzian of the
/// given FWHM, plus the constant background.  Cosmetic only; peak positions
/// and relative areas are the physical content.
std::vector<double> render_lorentzian(const CorrelationComb& comb, double fwhm,
                                      const std::vector<double>& t_grid);

} // namespace cespdc

#endif // CESPDC_COMB_HPP
