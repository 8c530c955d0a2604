#include "cespdc/oracle.hpp"

#include <cmath>

namespace cespdc {

namespace {

struct MapCoeffs {
  double gc, gs;   // r1 r2 cosh(r), r1 r2 sinh(r)
  double sh, ch;   // sinh(r), cosh(r)
  double diag() const { return gc * gc + gs * gs; }
  double offdiag() const { return 2.0 * gc * gs; }
};

MapCoeffs map_coeffs(const CavityParams& cavity, const GainSetting& gain) {
  MapCoeffs c{};
  c.ch = std::cosh(gain.r());
  c.sh = std::sinh(gain.r());
  const double u = cavity.roundtrip_amplitude();
  c.gc = u * c.ch;
  c.gs = u * c.sh;
  return c;
}

} // namespace

MomentState roundtrip_moment_map(const MomentState& state,
                                 const CavityParams& cavity,
                                 const GainSetting& gain) {
  const MapCoeffs c = map_coeffs(cavity, gain);
  MomentState next{};
  next.n = c.diag() * state.n + c.offdiag() * state.m + c.sh * c.sh;
  next.m = c.offdiag() * state.n + c.diag() * state.m + c.sh * c.ch;
  return next;
}

double moment_map_spectral_radius(const CavityParams& cavity,
                                  const GainSetting& gain) {
  const MapCoeffs c = map_coeffs(cavity, gain);
  const double lambda = c.gc + c.gs; // r1 r2 e^{r}
  return lambda * lambda;
}

MomentState steady_state(const CavityParams& cavity, const GainSetting& gain,
                         double tol, int max_iterations) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  MomentState state{};
  for (int i = 0; i < max_iterations; ++i) {
    const MomentState next = roundtrip_moment_map(state, cavity, gain);
    const double delta =
        std::max(std::abs(next.n - state.n), std::abs(next.m - state.m));
    state = next;
    if (delta < tol) return state;
  }
  throw ConvergenceError(
      "moment fixed point not reached in " + std::to_string(max_iterations) +
          " iterations (spectral radius " +
          std::to_string(moment_map_spectral_radius(cavity, gain)) + ")",
      tol);
}

MomentState steady_state_closed(const CavityParams& cavity,
                                const GainSetting& gain) {
  // The sum and difference of (n, m) decouple under the map:
  //   (n + m) (1 - (gc + gs)^2) = sinh(r) e^{r}
  //   (n - m) (1 - (gc - gs)^2) = -sinh(r) e^{-r}
  const MapCoeffs c = map_coeffs(cavity, gain);
  const double lam_plus = c.gc + c.gs;
  const double lam_minus = c.gc - c.gs;
  const double sum = c.sh * (c.sh + c.ch) / (1.0 - lam_plus * lam_plus);
  const double diff = c.sh * (c.sh - c.ch) / (1.0 - lam_minus * lam_minus);
  MomentState state{};
  state.n = 0.5 * (sum + diff);
  state.m = 0.5 * (sum - diff);
  return state;
}

OutputCorrelators two_time_output_correlators(const CavityParams& cavity,
                                              const GainSetting& gain,
                                              int k_max) {
  if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
  const MapCoeffs c = map_coeffs(cavity, gain);
  const MomentState ss = steady_state_closed(cavity, gain);
  const double t1 = cavity.t1();
  const double t1sq = t1 * t1;
  const double r1 = cavity.r1();
  const double r2 = cavity.r2();

  OutputCorrelators out;
  out.normal.reserve(static_cast<std::size_t>(k_max) + 1);
  out.anomalous.reserve(static_cast<std::size_t>(k_max) + 1);

  // L^k entries for the 2x2 transfer matrix L = [[gc, gs], [gs, gc]],
  // accumulated by explicit matrix multiplication.
  double l11 = 1.0, l12 = 0.0;
  out.normal.push_back(t1sq * ss.n);
  out.anomalous.push_back(t1sq * ss.m);

  for (int k = 1; k <= k_max; ++k) {
    const double p11 = l11; // L^{k-1}, needed for the input-slot cross term
    const double p12 = l12;
    const double n11 = c.gc * l11 + c.gs * l12;
    const double n12 = c.gs * l11 + c.gc * l12;
    l11 = n11;
    l12 = n12;
    out.normal.push_back(t1sq * (l11 * ss.n + l12 * ss.m));
    // <a_out(t) a_out(t+k tau)>: intracavity part plus the commutator term
    // (n+1), minus the interference of the reflected input with its own
    // injection propagated k-1 round trips.
    const double intracavity = t1sq * (l11 * ss.m + l12 * (ss.n + 1.0));
    const double input_cross = r1 * t1sq * r2 * (p11 * c.sh + p12 * c.ch);
    out.anomalous.push_back(intracavity - input_cross);
  }
  return out;
}

NormalizedComb g2_from_moments(const OutputCorrelators& correlators) {
  if (correlators.normal.empty() ||
      correlators.normal.size() != correlators.anomalous.size())
    throw std::invalid_argument("correlator sequences empty or mismatched");
  const double w0 = correlators.anomalous[0] * correlators.anomalous[0] +
                    correlators.normal[0] * correlators.normal[0];
  NormalizedComb comb{};
  if (!(w0 > 0.0)) {
    comb.weights.assign(correlators.normal.size(), 0.0);
    comb.background = 0.0;
    return comb;
  }
  comb.weights.reserve(correlators.normal.size());
  for (std::size_t k = 0; k < correlators.normal.size(); ++k) {
    const double wk = correlators.anomalous[k] * correlators.anomalous[k] +
                      correlators.normal[k] * correlators.normal[k];
    comb.weights.push_back(wk / w0);
  }
  comb.background = correlators.normal[0] * correlators.normal[0] / w0;
  return comb;
}

} // namespace cespdc
