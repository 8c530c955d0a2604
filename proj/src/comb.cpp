#include "cespdc/comb.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "cespdc/bogoliubov.hpp"

namespace cespdc {

namespace {

// Double-pole limit of the partial fraction form, used when x and y coalesce
// (r -> 0).  Evaluated at the midpoint z = (x+y)/2, which also serves as a
// second-order accurate finite-difference stand-in for nearly degenerate
// poles where the direct difference quotient would cancel.
double f_closed_degenerate(const PoleParams& pole, double u2, int k) {
  const double z_minus_1 = 0.5 * (pole.x_minus_1 + pole.y_minus_1);
  const double z = 1.0 + z_minus_1;
  const double z2m1 = z_minus_1 * (z + 1.0);
  const double sq = std::sqrt(z2m1);
  const double rho = z - sq;
  return std::pow(rho, k) * (k / z2m1 + z / (z2m1 * sq)) / (2.0 * u2);
}

} // namespace

double f_closed(const PoleParams& pole, const CavityParams& cavity, int k) {
  if (k < 0) throw std::invalid_argument("lag index k must be >= 0");
  if (!(pole.x > 1.0) || !(pole.y > 1.0))
    throw std::domain_error("pole parameters must satisfy x > 1 and y > 1");
  const double u = cavity.roundtrip_amplitude();
  const double u2 = u * u;
  if (pole.y_minus_x < 1e-6 * pole.x_minus_1)
    return f_closed_degenerate(pole, u2, k);
  const double term_x = std::pow(pole.rho_x, k) / pole.sqrt_x2_minus_1;
  const double term_y = std::pow(pole.rho_y, k) / pole.sqrt_y2_minus_1;
  return (term_x - term_y) / (2.0 * u2 * pole.y_minus_x);
}

namespace {

struct QuadContext {
  const CavityParams* cavity;
  const GainSetting* gain;
  int k;
};

double kernel_cos_integrand(double theta, void* params) {
  const auto* ctx = static_cast<const QuadContext*>(params);
  const double omega = theta / ctx->cavity->tau();
  const std::complex<double> dp = denominator(*ctx->cavity, *ctx->gain, omega);
  const std::complex<double> dm = denominator(*ctx->cavity, *ctx->gain, -omega);
  return (dp * dm).real() * std::cos(ctx->k * theta);
}

} // namespace

QuadratureResult f_quadrature(const CavityParams& cavity, const GainSetting& gain,
                              int k, double epsabs, double epsrel) {
  if (k < 0) throw std::invalid_argument("lag index k must be >= 0");
  constexpr std::size_t kLimit = 20000;
  std::unique_ptr<gsl_integration_workspace,
                  decltype(&gsl_integration_workspace_free)>
      workspace(gsl_integration_workspace_alloc(kLimit),
                gsl_integration_workspace_free);

  QuadContext ctx{&cavity, &gain, k};
  gsl_function f;
  f.function = &kernel_cos_integrand;
  f.params = &ctx;

  gsl_error_handler_t* old_handler = gsl_set_error_handler_off();
  double result = 0.0, abserr = 0.0;
  const int status =
      gsl_integration_qag(&f, 0.0, std::numbers::pi, epsabs, epsrel,
                          kLimit, GSL_INTEG_GAUSS61, workspace.get(), &result, &abserr);
  gsl_set_error_handler(old_handler);

  // GSL_EROUND means the requested tolerance sits below the roundoff floor of
  // the integrand; the returned estimate is still the best available and the
  // reported abserr remains valid.
  if (status != GSL_SUCCESS && status != GSL_EROUND)
    throw ConvergenceError("F(k) quadrature did not converge (" +
                               std::string(gsl_strerror(status)) + ")",
                           abserr);
  result *= 2.0 / std::numbers::pi;
  abserr *= 2.0 / std::numbers::pi;
  return QuadratureResult{result, abserr};
}

FourierCoeffs fourier_coeffs(const CavityParams& cavity, const GainSetting& gain,
                             int k_max) {
  if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
  const PoleParams pole = pole_params(cavity, gain);
  FourierCoeffs fc;
  fc.values.reserve(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) fc.values.push_back(f_closed(pole, cavity, k));
  return fc;
}

namespace {

double comb_weight(const CavityParams& cavity, const GainSetting& gain,
                   double f_km1, double f_k, double f_kp1) {
  const double u = cavity.roundtrip_amplitude();
  const double t1 = cavity.t1();
  const double sh = std::sinh(gain.r());
  const double ch = std::cosh(gain.r());
  const double t14 = t1 * t1 * t1 * t1;
  const double gamma_coeff = (1.0 + u * u) * ch * f_k - u * f_kp1 - u * f_km1;
  const double upsilon_coeff = sh * (1.0 - u * u) * f_k;
  return t14 * sh * sh * (gamma_coeff * gamma_coeff + upsilon_coeff * upsilon_coeff);
}

} // namespace

CorrelationComb g2_comb(const CavityParams& cavity, const GainSetting& gain,
                        int k_max, int hard_limit) {
  if (hard_limit < 0) throw std::invalid_argument("hard_limit must be >= 0");
  const PoleParams pole = pole_params(cavity, gain);
  const double u = cavity.roundtrip_amplitude();
  const double t1 = cavity.t1();
  const double sh = std::sinh(gain.r());
  const double t14 = t1 * t1 * t1 * t1;

  const double f0 = f_closed(pole, cavity, 0);
  const double ups0 = sh * sh * (1.0 - u * u) * f0;

  CorrelationComb comb;
  comb.tau = cavity.tau();
  comb.gain_fraction = gain.fraction();
  comb.background = t14 * ups0 * ups0;

  const bool auto_kmax = k_max < 0;
  const int limit = auto_kmax ? hard_limit : k_max;

  double f_km1 = f_closed(pole, cavity, 1); // F(-1) = F(1)
  double f_k = f0;
  double f_kp1 = f_km1;
  const double w0 = comb_weight(cavity, gain, f_km1, f_k, f_kp1);
  comb.weights.push_back(w0);

  for (int k = 1; k <= limit; ++k) {
    f_km1 = f_k;
    f_k = f_kp1;
    f_kp1 = f_closed(pole, cavity, k + 1);
    const double wk = comb_weight(cavity, gain, f_km1, f_k, f_kp1);
    comb.weights.push_back(wk);
    if (auto_kmax && w0 > 0.0 && wk / w0 < 1e-12) break;
  }
  return comb;
}

std::vector<std::pair<double, double>>
g2_envelope_normalized(const CorrelationComb& comb) {
  const double denom =
      (comb.weights.empty() ? 0.0 : comb.weights.front()) + comb.background;
  if (!(denom > 0.0))
    throw std::domain_error(
        "degenerate comb: w_0 + b = 0 (zero gain produces no correlations)");
  std::vector<std::pair<double, double>> env;
  env.reserve(comb.weights.size());
  for (std::size_t k = 0; k < comb.weights.size(); ++k)
    env.emplace_back(static_cast<double>(k) * comb.tau,
                     (comb.weights[k] + comb.background) / denom);
  return env;
}

std::vector<double> render_lorentzian(const CorrelationComb& comb, double fwhm,
                                      const std::vector<double>& t_grid) {
  if (!(fwhm > 0.0)) throw std::invalid_argument("fwhm must be positive");
  const double half_width = 0.5 * fwhm;
  std::vector<double> trace;
  trace.reserve(t_grid.size());
  const int k_max = comb.k_max();
  for (double t : t_grid) {
    double value = comb.background;
    for (int k = -k_max; k <= k_max; ++k) {
      const double dt = t - k * comb.tau;
      value += comb.weights[static_cast<std::size_t>(std::abs(k))] * half_width /
               (std::numbers::pi * (dt * dt + half_width * half_width));
    }
    trace.push_back(value);
  }
  return trace;
}

} // namespace cespdc
