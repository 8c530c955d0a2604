#ifndef CESPDC_ORACLE_HPP
#define CESPDC_ORACLE_HPP

#include <vector>

#include "cespdc/core_params.hpp"

namespace cespdc {

/// Gaussian second moments of the intracavity field: mean photon number
/// n = <a+ a> and anomalous moment m = <a a> (real by phase convention).
/// Physical states satisfy m^2 <= n (n + 1).
struct MomentState {
  double n = 0.0;
  double m = 0.0;
  bool physical() const { return m * m <= n * (n + 1.0) + 1e-12; }
};

/// One exact round trip of the moment recursion obtained from the discrete
/// field map (output coupler, lumped loss, single-pass squeezer, each input
/// slot fresh vacuum):
///   n' = (gc^2 + gs^2) n + 2 gc gs m + sinh^2(r)
///   m' = 2 gc gs n + (gc^2 + gs^2) m + sinh(r) cosh(r)
/// with gc = r1 r2 cosh(r), gs = r1 r2 sinh(r).
MomentState roundtrip_moment_map(const MomentState& state,
                                 const CavityParams& cavity,
                                 const GainSetting& gain);

/// Larger eigenvalue modulus of the linear part of the moment map,
/// (r1 r2 e^{r})^2; below 1 exactly when the gain is sub-threshold.
double moment_map_spectral_radius(const CavityParams& cavity,
                                  const GainSetting& gain);

/// Fixed point by iteration from vacuum; throws ConvergenceError past
/// max_iterations (a near-threshold conditioning signal).
MomentState steady_state(const CavityParams& cavity, const GainSetting& gain,
                         double tol = 1e-14, int max_iterations = 1000000);

/// Fixed point in closed form from the 2x2 linear solve; the dual path to
/// steady_state.
MomentState steady_state_closed(const CavityParams& cavity,
                                const GainSetting& gain);

/// Steady-state two-time correlators of the output field at lags T = k tau:
///   normal[k]    = <a_out+(t) a_out(t + k tau)>
///   anomalous[k] = <a_out(t)  a_out(t + k tau)>
/// The anomalous correlator includes the interference between the directly
/// reflected input (-r1 a_in(t)) and that same vacuum slot's injection into
/// the intracavity field one round trip later; this cross term is carried
/// through the k-step transfer matrix explicitly.
struct OutputCorrelators {
  std::vector<double> normal;
  std::vector<double> anomalous;
};
OutputCorrelators two_time_output_correlators(const CavityParams& cavity,
                                              const GainSetting& gain, int k_max);

/// Gaussian (Wick) assembly of the intensity correlation comb from the
/// correlators, emitted T=0-normalized:
///   weights[k] = (|<a a>_k|^2 + |<a+ a>_k|^2) / (same at k = 0)
///   background = <a+ a>_0^2 / (weight numerator at k = 0)
struct NormalizedComb {
  std::vector<double> weights; // weights[0] == 1
  double background;
};
NormalizedComb g2_from_moments(const OutputCorrelators& correlators);

} // namespace cespdc

#endif // CESPDC_ORACLE_HPP
