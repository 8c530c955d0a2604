#include "cespdc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cespdc/bogoliubov.hpp"
#include "cespdc/comb.hpp"
#include "cespdc/oracle.hpp"
#include "cespdc/single_mode.hpp"
#include "cespdc/spectra.hpp"

namespace cespdc {

namespace {

VerificationCheck check_symplectic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> refl(0.05, 0.999);
  std::uniform_real_distribution<double> frac(0.0, 0.999);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const auto cavity = make_cavity(refl(rng), refl(rng), 1.0);
    const auto gain = make_gain_fraction(cavity, frac(rng));
    const auto c = coeffs(cavity, gain, angle(rng));
    // normalize by the coefficient scale: the absolute defect of doubles has
    // an irreducible floor of scale * 2^-53, which near-resonance
    // near-threshold tuples would otherwise hit
    const double scale = std::norm(c.A) + std::norm(c.B) + std::norm(c.C) +
                         std::norm(c.D) + 1.0;
    worst = std::max(worst, std::abs(c.symplectic_defect()) /
                                std::max(1.0, scale / 500.0));
  }
  return {"symplectic invariant |A|^2+|C|^2-|B|^2-|D|^2 = 1", worst, 1e-12};
}

VerificationCheck check_spectra_dual_path(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> refl(0.05, 0.99);
  std::uniform_real_distribution<double> frac(0.0, 0.99);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const auto cavity = make_cavity(refl(rng), refl(rng), 1.0);
    const auto gain = make_gain_fraction(cavity, 0.01 + 0.98 * frac(rng));
    const double omega = angle(rng);
    const double g_closed = gamma_fn(cavity, gain, omega);
    const double u_closed = upsilon_fn(cavity, gain, omega);
    const auto g_asm = gamma_assembled(cavity, gain, omega);
    const auto u_asm = upsilon_assembled(cavity, gain, omega);
    worst = std::max(worst,
                     std::abs(g_asm.real() - g_closed) / std::abs(g_closed));
    worst = std::max(worst,
                     std::abs(u_asm.real() - u_closed) / std::abs(u_closed));
  }
  return {"Gamma/Upsilon closed form vs Bogoliubov assembly", worst, 1e-12};
}

VerificationCheck check_fourier_triangulation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> refl(0.05, 0.99);
  std::uniform_real_distribution<double> frac(0.0, 0.99);
  std::uniform_int_distribution<int> lag(0, 50);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto cavity = make_cavity(refl(rng), refl(rng), 1.0);
    const auto gain = make_gain_fraction(cavity, frac(rng));
    const auto pole = pole_params(cavity, gain);
    const double f0 = f_closed(pole, cavity, 0);
    const int k = lag(rng);
    const double fc = f_closed(pole, cavity, k);
    const double fq = f_quadrature(cavity, gain, k).value;
    worst = std::max(worst, std::abs(fq - fc) / f0);
  }
  return {"F(k) closed form vs adaptive quadrature", worst, 1e-9};
}

VerificationCheck check_oracle_vs_comb(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> refl(0.3, 0.99);
  std::uniform_real_distribution<double> frac(0.01, 0.95);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto cavity = make_cavity(refl(rng), refl(rng), 1.0);
    const auto gain = make_gain_fraction(cavity, frac(rng));
    const int k_max = 30;
    const auto comb = g2_comb(cavity, gain, k_max);
    const auto oracle = g2_from_moments(
        two_time_output_correlators(cavity, gain, k_max));
    const double w0 = comb.weights.front();
    for (int k = 0; k <= k_max; ++k)
      worst = std::max(worst, std::abs(comb.weights[static_cast<std::size_t>(k)] / w0 -
                                       oracle.weights[static_cast<std::size_t>(k)]));
    worst = std::max(worst, std::abs(comb.background / w0 - oracle.background));
  }
  return {"comb weights vs time-domain moment oracle", worst, 1e-8};
}

VerificationCheck check_steady_state_dual_path(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> refl(0.3, 0.99);
  std::uniform_real_distribution<double> frac(0.01, 0.9);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto cavity = make_cavity(refl(rng), refl(rng), 1.0);
    const auto gain = make_gain_fraction(cavity, frac(rng));
    const auto iter = steady_state(cavity, gain, 1e-14);
    const auto closed = steady_state_closed(cavity, gain);
    const double scale = std::max(1.0, closed.n);
    worst = std::max(worst, std::abs(iter.n - closed.n) / scale);
    worst = std::max(worst, std::abs(iter.m - closed.m) / scale);
  }
  return {"steady state iterative vs closed form", worst, 1e-12};
}

VerificationCheck check_single_mode_dual_path(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> refl(0.5, 0.95);
  std::uniform_real_distribution<double> frac(0.05, 0.8);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const auto cavity = make_cavity(refl(rng), refl(rng), 1.0);
    const auto gain = make_gain_fraction(cavity, frac(rng));
    const auto sm = from_cavity(cavity, gain);
    for (double T : {0.0, 0.5, 2.0, 8.0 / sm.total_decay()}) {
      const double closed = g2_single(sm, T);
      const double spectral = g2_single_via_spectra(sm, T);
      worst = std::max(worst, std::abs(spectral - closed) / closed);
    }
  }
  return {"single-mode closed form vs spectral assembly", worst, 1e-9};
}

} // namespace

VerificationReport run_verification(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  VerificationReport report;
  report.checks.push_back(check_symplectic(rng));
  report.checks.push_back(check_spectra_dual_path(rng));
  report.checks.push_back(check_fourier_triangulation(rng));
  report.checks.push_back(check_oracle_vs_comb(rng));
  report.checks.push_back(check_steady_state_dual_path(rng));
  report.checks.push_back(check_single_mode_dual_path(rng));
  return report;
}

} // namespace cespdc
