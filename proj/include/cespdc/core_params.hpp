#ifndef CESPDC_CORE_PARAMS_HPP
#define CESPDC_CORE_PARAMS_HPP

#include <stdexcept>
#include <string>

namespace cespdc {

/// Thrown when a requested gain is at or above the oscillation threshold.
class ThresholdError : public std::domain_error {
public:
  explicit ThresholdError(const std::string& msg) : std::domain_error(msg) {}
};

/// Thrown when an iterative or adaptive routine fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& msg, double achieved)
      : std::runtime_error(msg), achieved_error(achieved) {}
  double achieved_error;
};

/// Passive cavity: amplitude reflectivities of the output coupler (r1) and the
/// lumped-loss mirror (r2), matching transmissions, and the round-trip time.
/// Transmissions are always derived from the reflectivities (t_i^2 = 1 - r_i^2)
/// so energy conservation holds exactly.
class CavityParams {
public:
  double r1() const { return r1_; }
  double r2() const { return r2_; }
  double t1() const { return t1_; }
  double t2() const { return t2_; }
  double tau() const { return tau_; }

  /// r1 * r2, the passive round-trip amplitude survival factor.
  double roundtrip_amplitude() const { return r1_ * r2_; }

private:
  friend CavityParams make_cavity(double r1, double r2, double tau);
  CavityParams(double r1, double r2, double t1, double t2, double tau)
      : r1_(r1), r2_(r2), t1_(t1), t2_(t2), tau_(tau) {}
  double r1_, r2_, t1_, t2_, tau_;
};

/// Validated constructor. Requires 0 <= r1 < 1, 0 < r2 <= 1, tau > 0.
/// Throws std::invalid_argument naming the offending parameter.
CavityParams make_cavity(double r1, double r2, double tau = 1.0);

/// Threshold squeezing amplitude r_th = -log(r1 r2).
double threshold(const CavityParams& cavity);

/// Single-pass squeezing amplitude, strictly below threshold.
class GainSetting {
public:
  double r() const { return r_; }
  double r_th() const { return r_th_; }
  double fraction() const { return r_ / r_th_; }

private:
  friend GainSetting make_gain(const CavityParams&, double);
  friend GainSetting make_gain_fraction(const CavityParams&, double);
  GainSetting(double r, double r_th) : r_(r), r_th_(r_th) {}
  double r_, r_th_;
};

/// Absolute gain; throws ThresholdError unless 0 <= r < r_th.
GainSetting make_gain(const CavityParams& cavity, double r);

/// Gain given as a fraction of threshold, as in "1% of the OPO threshold".
GainSetting make_gain_fraction(const CavityParams& cavity, double fraction);

/// Pole parameters of the resonant kernel d(w)d(-w):
///   x = (1 + r1^2 r2^2 e^{2r}) / (2 r1 r2 e^{r})
///   y = (1 + r1^2 r2^2 e^{-2r}) / (2 r1 r2 e^{-r})
/// Both exceed 1 strictly below threshold.  The struct also carries
/// cancellation-free derived quantities used by the closed-form Fourier
/// coefficients: rho_z = z - sqrt(z^2 - 1) evaluates exactly to
/// rho_x = r1 r2 e^{r} and rho_y = r1 r2 e^{-r}.
struct PoleParams {
  double x;
  double y;
  double x_minus_1;       // (1 - rho_x)^2 / (2 rho_x)
  double y_minus_1;       // (1 - rho_y)^2 / (2 rho_y)
  double rho_x;           // r1 r2 e^{r}, dominant (slow) decay ratio
  double rho_y;           // r1 r2 e^{-r}
  double sqrt_x2_minus_1; // (1 - rho_x^2) / (2 rho_x)
  double sqrt_y2_minus_1; // (1 - rho_y^2) / (2 rho_y)
  double y_minus_x;       // (1 - r1^2 r2^2) sinh(r) / (r1 r2), >= 0
};

/// Derives the pole parameters for a sub-threshold gain.
PoleParams pole_params(const CavityParams& cavity, const GainSetting& gain);

} // namespace cespdc

#endif // CESPDC_CORE_PARAMS_HPP
