#include "cespdc/single_mode.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "cespdc/comb.hpp"

namespace cespdc {

namespace {

void require_below_rate_threshold(const SingleModeParams& p) {
  if (!(p.epsilon < 0.5 * p.total_decay()))
    throw ThresholdError("gain rate epsilon = " + std::to_string(p.epsilon) +
                         " is at or above (gamma1 + gamma2)/2 = " +
                         std::to_string(0.5 * p.total_decay()));
}

} // namespace

SingleModeParams from_cavity(const CavityParams& cavity, const GainSetting& gain) {
  SingleModeParams p{};
  p.gamma1 = -2.0 * std::log(cavity.r1()) / cavity.tau();
  p.gamma2 = -2.0 * std::log(cavity.r2()) / cavity.tau();
  p.epsilon = gain.r() / cavity.tau();
  require_below_rate_threshold(p);
  return p;
}

namespace {

double f_envelope(const SingleModeParams& p, double T, double sign) {
  const double rate = p.total_decay() + sign * 2.0 * p.epsilon;
  return std::exp(-0.5 * std::abs(T) * rate) / rate;
}

} // namespace

double g2_single(const SingleModeParams& params, double T) {
  require_below_rate_threshold(params);
  const double fm = f_envelope(params, T, -1.0);
  const double fp = f_envelope(params, T, +1.0);
  const double fm0 = f_envelope(params, 0.0, -1.0);
  const double fp0 = f_envelope(params, 0.0, +1.0);
  const double pre =
      0.5 * std::numbers::pi * params.gamma1 * params.gamma1 * params.epsilon * params.epsilon;
  const double sum = fm + fp;
  const double diff = fm - fp;
  const double diff0 = fm0 - fp0;
  return pre * (sum * sum + diff * diff + diff0 * diff0);
}

double g2_multi_finite_n(const SingleModeParams& params, int N, double T,
                         double tau) {
  if (N < 0) throw std::invalid_argument("mode count N must be >= 0");
  const double phi = std::numbers::pi * T / tau;
  const double sin_denom = std::sin(phi);
  const int modes = 2 * N + 1;
  double dirichlet;
  if (std::abs(sin_denom) < 1e-12) {
    dirichlet = static_cast<double>(modes) * modes;
  } else {
    const double sin_num = std::sin(modes * phi);
    dirichlet = (sin_num * sin_num) / (sin_denom * sin_denom);
  }
  return g2_single(params, T) * dirichlet;
}

SingleModeCoeffs single_mode_coeffs(const SingleModeParams& params, double omega) {
  const double g1 = params.gamma1, g2 = params.gamma2, eps = params.epsilon;
  const std::complex<double> half1(0.5 * g1, 0.0);
  const std::complex<double> half2(0.5 * g2, -omega);
  const std::complex<double> denom =
      (half1 + half2) * (half1 + half2) - eps * eps;
  SingleModeCoeffs c{};
  c.A = (half1 * half1 - half2 * half2 + eps * eps) / denom;
  c.B = g1 * eps / denom;
  c.C = std::sqrt(g1 * g2) * (half1 + half2) / denom;
  c.D = std::sqrt(g1 * g2) * eps / denom;
  return c;
}

double gamma_single(const SingleModeParams& params, double omega) {
  const SingleModeCoeffs p = single_mode_coeffs(params, omega);
  const SingleModeCoeffs m = single_mode_coeffs(params, -omega);
  return (p.A * m.B + p.C * m.D).real();
}

double upsilon_single(const SingleModeParams& params, double omega) {
  const SingleModeCoeffs p = single_mode_coeffs(params, omega);
  const SingleModeCoeffs m = single_mode_coeffs(params, -omega);
  return (p.B * m.B + p.D * m.D).real();
}

namespace {

struct SpectrumContext {
  const SingleModeParams* params;
  double (*fn)(const SingleModeParams&, double);
};

double spectrum_integrand(double omega, void* raw) {
  const auto* ctx = static_cast<const SpectrumContext*>(raw);
  return ctx->fn(*ctx->params, omega);
}

// (1/sqrt(2 pi)) Int_{-inf}^{inf} f(w) e^{-i w T} dw for even real f, computed
// as (2/sqrt(2 pi)) Int_0^inf f(w) cos(w T) dw with a Fourier-weighted
// semi-infinite quadrature.
double fourier_even(const SingleModeParams& params,
                    double (*fn)(const SingleModeParams&, double), double T) {
  constexpr std::size_t kLimit = 10000;
  using Workspace = std::unique_ptr<gsl_integration_workspace,
                                    decltype(&gsl_integration_workspace_free)>;
  SpectrumContext ctx{&params, fn};
  gsl_function f;
  f.function = &spectrum_integrand;
  f.params = &ctx;

  gsl_error_handler_t* old_handler = gsl_set_error_handler_off();
  double result = 0.0, abserr = 0.0;
  int status;
  Workspace ws(gsl_integration_workspace_alloc(kLimit),
               gsl_integration_workspace_free);
  if (std::abs(T) < 1e-300) {
    status = gsl_integration_qagiu(&f, 0.0, 0.0, 1e-12, kLimit, ws.get(),
                                   &result, &abserr);
  } else {
    // Scale the absolute tolerance off the T = 0 value of the transform.
    double scale = 0.0, scale_err = 0.0;
    gsl_integration_qagiu(&f, 0.0, 0.0, 1e-10, kLimit, ws.get(), &scale,
                          &scale_err);
    Workspace cyc(gsl_integration_workspace_alloc(kLimit),
                  gsl_integration_workspace_free);
    std::unique_ptr<gsl_integration_qawo_table,
                    decltype(&gsl_integration_qawo_table_free)>
        table(gsl_integration_qawo_table_alloc(std::abs(T), 1.0, GSL_INTEG_COSINE,
                                               60),
              gsl_integration_qawo_table_free);
    status = gsl_integration_qawf(&f, 0.0, 1e-12 * std::abs(scale), kLimit,
                                  ws.get(), cyc.get(), table.get(), &result,
                                  &abserr);
  }
  gsl_set_error_handler(old_handler);
  if (status != GSL_SUCCESS && status != GSL_EROUND)
    throw ConvergenceError("single-mode spectral Fourier transform failed (" +
                               std::string(gsl_strerror(status)) + ")",
                           abserr);
  return 2.0 / std::sqrt(2.0 * std::numbers::pi) * result;
}

} // namespace

double g2_single_via_spectra(const SingleModeParams& params, double T) {
  require_below_rate_threshold(params);
  const double fg = fourier_even(params, &gamma_single, T);
  const double fu = fourier_even(params, &upsilon_single, T);
  const double fu0 = fourier_even(params, &upsilon_single, 0.0);
  return fg * fg + fu * fu + fu0 * fu0;
}

ModelComparison compare_models(const CavityParams& cavity, const GainSetting& gain,
                               int k_cap) {
  const CorrelationComb comb = g2_comb(cavity, gain, -1, k_cap);
  const auto env_multi = g2_envelope_normalized(comb);
  const SingleModeParams sm = from_cavity(cavity, gain);
  const double g2s0 = g2_single(sm, 0.0);

  ModelComparison cmp{};
  cmp.background_multi =
      comb.background / (comb.weights.front() + comb.background);
  const double fm0 = f_envelope(sm, 0.0, -1.0);
  const double fp0 = f_envelope(sm, 0.0, +1.0);
  const double diff0 = fm0 - fp0;
  cmp.background_single =
      0.5 * std::numbers::pi * sm.gamma1 * sm.gamma1 * sm.epsilon * sm.epsilon *
      diff0 * diff0 / g2s0;

  cmp.max_deviation = std::abs(cmp.background_multi - cmp.background_single);
  cmp.worst_lag = -1; // asymptotic tail
  for (std::size_t k = 0; k < env_multi.size(); ++k) {
    const double T = env_multi[k].first;
    const double dev = std::abs(env_multi[k].second - g2_single(sm, T) / g2s0);
    if (dev > cmp.max_deviation) {
      cmp.max_deviation = dev;
      cmp.worst_lag = static_cast<int>(k);
    }
  }
  return cmp;
}

} // namespace cespdc
