#include "cespdc/core_params.hpp"

#include <cmath>

namespace cespdc {

CavityParams make_cavity(double r1, double r2, double tau) {
  if (!(r1 >= 0.0 && r1 < 1.0))
    throw std::invalid_argument("r1 must satisfy 0 <= r1 < 1, got " + std::to_string(r1));
  if (!(r2 > 0.0 && r2 <= 1.0))
    throw std::invalid_argument("r2 must satisfy 0 < r2 <= 1, got " + std::to_string(r2));
  if (!(tau > 0.0))
    throw std::invalid_argument("tau must be positive, got " + std::to_string(tau));
  const double t1 = std::sqrt(1.0 - r1 * r1);
  const double t2 = std::sqrt(1.0 - r2 * r2);
  return CavityParams(r1, r2, t1, t2, tau);
}

double threshold(const CavityParams& cavity) {
  return -std::log(cavity.r1() * cavity.r2());
}

GainSetting make_gain(const CavityParams& cavity, double r) {
  if (!(r >= 0.0))
    throw std::invalid_argument("gain r must be nonnegative, got " + std::to_string(r));
  const double r_th = threshold(cavity);
  if (!(r < r_th))
    throw ThresholdError("gain r = " + std::to_string(r) +
                         " is at or above threshold r_th = " + std::to_string(r_th));
  return GainSetting(r, r_th);
}

GainSetting make_gain_fraction(const CavityParams& cavity, double fraction) {
  if (!(fraction >= 0.0))
    throw std::invalid_argument("gain fraction must be nonnegative, got " +
                                std::to_string(fraction));
  const double r_th = threshold(cavity);
  if (!(fraction < 1.0))
    throw ThresholdError("gain fraction " + std::to_string(fraction) +
                         " is at or above threshold");
  return GainSetting(fraction * r_th, r_th);
}

PoleParams pole_params(const CavityParams& cavity, const GainSetting& gain) {
  const double u = cavity.roundtrip_amplitude();
  const double r = gain.r();
  // GainSetting construction already guarantees r < r_th, i.e. u e^r < 1.
  PoleParams p{};
  p.rho_x = u * std::exp(r);
  p.rho_y = u * std::exp(-r);
  p.x = 0.5 * (p.rho_x + 1.0 / p.rho_x);
  p.y = 0.5 * (p.rho_y + 1.0 / p.rho_y);
  const double dx = 1.0 - p.rho_x;
  const double dy = 1.0 - p.rho_y;
  p.x_minus_1 = dx * dx / (2.0 * p.rho_x);
  p.y_minus_1 = dy * dy / (2.0 * p.rho_y);
  p.sqrt_x2_minus_1 = (1.0 - p.rho_x * p.rho_x) / (2.0 * p.rho_x);
  p.sqrt_y2_minus_1 = (1.0 - p.rho_y * p.rho_y) / (2.0 * p.rho_y);
  p.y_minus_x = (1.0 - u * u) * std::sinh(r) / u;
  return p;
}

} // namespace cespdc
