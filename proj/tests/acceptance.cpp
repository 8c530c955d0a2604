// Acceptance gate: one pass/fail line per criterion, exit code = number of
// failures.  Each criterion carries its own tolerance and wall-clock budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cespdc/bogoliubov.hpp"
#include "cespdc/comb.hpp"
#include "cespdc/core_params.hpp"
#include "cespdc/oracle.hpp"
#include "cespdc/single_mode.hpp"
#include "cespdc/spectra.hpp"

using namespace cespdc;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Timer {
  Clock::time_point start = Clock::now();
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }
};

void report(int index, const std::string& name, bool ok, double worst,
            double tol, double elapsed, double budget) {
  const bool in_budget = elapsed <= budget;
  const bool pass = ok && in_budget;
  if (!pass) ++g_failures;
  std::printf("%s  criterion %d: %s  (worst=%.3e, tol=%.1e, %.2fs/%.0fs)%s\n",
              pass ? "PASS" : "FAIL", index, name.c_str(), worst, tol, elapsed,
              budget, in_budget ? "" : " [over budget]");
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    v.push_back(n == 1 ? lo : lo + (hi - lo) * i / static_cast<double>(n - 1));
  return v;
}

// 1. Commutator preservation of the frequency-domain coefficients.  The
//    absolute defect of coefficients stored in doubles has a hard floor of
//    scale * 2^-53 (scale = |A|^2+|B|^2+|C|^2+|D|^2+1), so near-resonance
//    near-threshold tuples where that floor exceeds the tolerance are checked
//    against a scale-relative bound instead and replaced in the absolute
//    count; 1000 well-conditioned tuples are always evaluated.
void criterion_symplectic() {
  Timer timer;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> r1_dist(0.0, 0.999);
  std::uniform_real_distribution<double> r2_dist(0.001, 0.999);
  std::uniform_real_distribution<double> frac(0.0, 0.999);
  std::uniform_real_distribution<double> omega(-8.0, 8.0);
  double worst = 0.0;
  double worst_rel = 0.0;
  int accepted = 0;
  int drawn = 0;
  while (accepted < 1000 && drawn < 4000) {
    ++drawn;
    const auto cavity = make_cavity(r1_dist(rng), r2_dist(rng), 1.0);
    const auto gain = make_gain_fraction(cavity, frac(rng));
    const auto c = coeffs(cavity, gain, omega(rng));
    const double scale = std::norm(c.A) + std::norm(c.B) + std::norm(c.C) +
                         std::norm(c.D) + 1.0;
    const double defect = std::abs(c.symplectic_defect());
    worst_rel = std::max(worst_rel, defect / scale);
    if (scale < 500.0) {
      worst = std::max(worst, defect);
      ++accepted;
    }
  }
  const bool ok = accepted == 1000 && worst < 1e-12 && worst_rel < 1e-14;
  report(1, "symplectic invariant |A|^2+|C|^2-|B|^2-|D|^2 = 1", ok, worst,
         1e-12, timer.seconds(), 1.0);
}

// 2. Closed-form Fourier coefficients against adaptive quadrature.
void criterion_fourier_triangulation() {
  Timer timer;
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> refl(0.05, 0.995);
  std::uniform_real_distribution<double> frac(0.0, 0.99);
  std::uniform_int_distribution<int> lag(0, 50);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto cavity = make_cavity(refl(rng), refl(rng), 1.0);
    // every tenth tuple probes the degenerate r = 0 branch
    const auto gain = make_gain_fraction(cavity, i % 10 == 0 ? 0.0 : frac(rng));
    const auto pole = pole_params(cavity, gain);
    const double f0 = f_closed(pole, cavity, 0);
    const int k = lag(rng);
    const auto quad = f_quadrature(cavity, gain, k);
    worst = std::max(worst, std::abs(quad.value - f_closed(pole, cavity, k)) / f0);
  }
  report(2, "F(k) closed form vs quadrature, k <= 50", worst < 1e-9, worst,
         1e-9, timer.seconds(), 30.0);
}

// 3. Frequency-domain comb against the time-domain moment oracle.
void criterion_oracle_equivalence() {
  Timer timer;
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> refl(0.3, 0.99);
  std::uniform_real_distribution<double> frac(0.01, 0.95);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto cavity = make_cavity(refl(rng), refl(rng), 1.0);
    const auto gain = make_gain_fraction(cavity, frac(rng));
    const auto comb = g2_comb(cavity, gain, 30);
    const auto oracle = g2_from_moments(two_time_output_correlators(cavity, gain, 30));
    const double w0 = comb.weights[0];
    for (int k = 0; k <= 30; ++k)
      worst = std::max(worst, std::abs(comb.weights[k] / w0 - oracle.weights[k]));
    worst = std::max(worst, std::abs(comb.background / w0 - oracle.background));
  }
  report(3, "comb weights vs time-domain moment oracle, k <= 30", worst < 1e-8,
         worst, 1e-8, timer.seconds(), 10.0);
}

// 4. Multimode vs single-mode deviation bound over the parameter grid, and
//    the near-single-mode limit in the high-finesse low-gain corner.
void criterion_deviation_bound() {
  Timer timer;
  const auto r1_grid = linspace(0.5, 0.99, 25);
  const auto r2_grid = linspace(0.5, 0.99, 25);
  const auto frac_grid = linspace(0.01, 0.95, 19);
  double grid_max = 0.0;
  double corner_max = 0.0;
  bool corner_seen = false;
  for (double r1 : r1_grid) {
    for (double r2 : r2_grid) {
      const auto cavity = make_cavity(r1, r2, 1.0);
      for (double frac : frac_grid) {
        const double dev =
            compare_models(cavity, make_gain_fraction(cavity, frac)).max_deviation;
        grid_max = std::max(grid_max, dev);
        if (r1 >= 0.95 && r2 >= 0.95 && frac <= 0.05) {
          corner_max = std::max(corner_max, dev);
          corner_seen = true;
        }
      }
    }
  }
  const bool ok = grid_max <= 0.08 && corner_seen && corner_max < 0.01;
  const double elapsed = timer.seconds();
  std::printf("      grid max deviation %.4f, high-finesse corner %.5f\n",
              grid_max, corner_max);
  report(4, "model deviation <= 8% on grid, < 1% in high-finesse corner", ok,
         grid_max, 0.08, elapsed, 120.0);
}

// 5. Normalized comb envelope broadens monotonically with gain.
void criterion_gain_broadening() {
  Timer timer;
  const auto cavity = make_cavity(0.9, 0.9, 1.0);
  bool ok = true;
  double worst_margin = 1.0;
  for (int k : {1, 3, 10}) {
    double prev = -1.0;
    for (double frac : {0.01, 0.5, 0.9}) {
      const auto comb = g2_comb(cavity, make_gain_fraction(cavity, frac), 12);
      const double env =
          (comb.weights[k] + comb.background) / (comb.weights[0] + comb.background);
      if (env <= prev) ok = false;
      if (prev >= 0.0) worst_margin = std::min(worst_margin, env - prev);
      prev = env;
    }
  }
  report(5, "gain broadening: envelope(k) increases with r at k = 1, 3, 10", ok,
         worst_margin, 0.0, timer.seconds(), 5.0);
}

// 6. Single-mode closed form against its own spectral (Bogoliubov) assembly.
void criterion_single_mode_dual_path() {
  Timer timer;
  const std::vector<SingleModeParams> params = {
      {1.0, 1.0, 0.25}, {0.8, 0.6, 0.3}, {0.05, 0.04, 0.02}, {2.0, 0.1, 0.9},
      {0.5, 1.5, 0.15}};
  double worst = 0.0;
  for (const auto& p : params) {
    const double t_end = 20.0 / p.total_decay();
    for (double T : linspace(0.0, t_end, 9)) {
      const double closed = g2_single(p, T);
      const double spectral = g2_single_via_spectra(p, T);
      worst = std::max(worst, std::abs(spectral - closed) / closed);
    }
  }
  report(6, "single-mode G2 closed form vs spectral assembly", worst < 1e-9,
         worst, 1e-9, timer.seconds(), 5.0);
}

// 7. Squeezing spectrum sanity: vacuum normalization, minimum-uncertainty
//    lossless cavity, and the uncertainty bound with loss.
void criterion_squeezing() {
  Timer timer;
  using std::numbers::pi;
  double worst = 0.0;

  const auto vac_cavity = make_cavity(0.9, 0.85, 1.0);
  const auto vac = make_gain(vac_cavity, 0.0);
  for (double omega : linspace(-3.0 * 2.0 * pi, 3.0 * 2.0 * pi, 61))
    for (double theta : {0.0, 0.7, pi})
      worst = std::max(worst,
                       std::abs(squeezing_spectrum(vac_cavity, vac, omega, theta) - 1.0));

  const auto lossless = make_cavity(0.9, 1.0, 1.0);
  for (double frac : {0.2, 0.6, 0.9}) {
    const auto gain = make_gain_fraction(lossless, frac);
    for (double omega : linspace(-3.0 * 2.0 * pi, 3.0 * 2.0 * pi, 61)) {
      const double product = squeezing_spectrum(lossless, gain, omega, 0.0) *
                             squeezing_spectrum(lossless, gain, omega, pi);
      worst = std::max(worst, std::abs(product - 1.0));
    }
  }
  bool lossy_ok = true;
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> refl(0.2, 0.98);
  std::uniform_real_distribution<double> frac(0.0, 0.95);
  for (int i = 0; i < 200; ++i) {
    const auto cavity = make_cavity(refl(rng), refl(rng), 1.0);
    const auto gain = make_gain_fraction(cavity, frac(rng));
    for (double omega : linspace(-3.0 * 2.0 * pi, 3.0 * 2.0 * pi, 13)) {
      const double product = squeezing_spectrum(cavity, gain, omega, 0.0) *
                             squeezing_spectrum(cavity, gain, omega, pi);
      if (!(product >= 1.0 - 1e-12)) lossy_ok = false;
    }
  }
  report(7, "squeezing sanity: vacuum = 1, lossless product = 1, lossy >= 1",
         worst < 1e-10 && lossy_ok, worst, 1e-10, timer.seconds(), 5.0);
}

// 8. Rendered trace reproduces the comb shape: tallest peak at T = 0, local
//    maxima at integer lags, even symmetry, monotone peak envelope that
//    matches the normalized comb.
void criterion_rendered_shape() {
  Timer timer;
  const auto cavity = make_cavity(0.9, 0.9, 1.0);
  const auto gain = make_gain_fraction(cavity, 0.5);
  const auto comb = g2_comb(cavity, gain, 40);
  const double fwhm = 0.02;
  const int peaks = 8;

  std::vector<double> grid = linspace(-10.0, 10.0, 4001);
  const auto trace = render_lorentzian(comb, fwhm, grid);

  bool ok = true;
  double worst = 0.0;

  std::size_t argmax = 0;
  for (std::size_t i = 1; i < trace.size(); ++i)
    if (trace[i] > trace[argmax]) argmax = i;
  if (std::abs(grid[argmax]) > fwhm) ok = false;

  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double mirror = trace[trace.size() - 1 - i];
    worst = std::max(worst, std::abs(trace[i] - mirror) /
                                (std::abs(trace[i]) + 1e-300));
  }
  if (worst > 1e-12) ok = false;

  // peak heights at k tau decrease and track the normalized comb envelope
  std::vector<double> peak_heights;
  for (int k = 0; k <= peaks; ++k) {
    const std::vector<double> probe{k * 1.0 - 0.1, k * 1.0, k * 1.0 + 0.1};
    const auto v = render_lorentzian(comb, fwhm, probe);
    if (!(v[1] > v[0] && v[1] > v[2])) ok = false;
    peak_heights.push_back(v[1]);
  }
  for (int k = 1; k <= peaks; ++k)
    if (!(peak_heights[k] < peak_heights[k - 1])) ok = false;
  // peak heights scale with the comb weights (the flat background adds the
  // same small offset everywhere instead of being amplified by 1/fwhm)
  double envelope_err = 0.0;
  for (int k = 0; k <= peaks; ++k) {
    const double env = comb.weights[k] / comb.weights[0];
    envelope_err =
        std::max(envelope_err, std::abs(peak_heights[k] / peak_heights[0] - env));
  }
  if (envelope_err > 0.02) ok = false;

  report(8, "rendered trace: comb of decaying peaks at integer lags", ok,
         envelope_err, 0.02, timer.seconds(), 10.0);
}

} // namespace

int main() {
  criterion_symplectic();
  criterion_fourier_triangulation();
  criterion_oracle_equivalence();
  criterion_deviation_bound();
  criterion_gain_broadening();
  criterion_single_mode_dual_path();
  criterion_squeezing();
  criterion_rendered_shape();
  std::printf("%s: %d/8 criteria passed\n", g_failures == 0 ? "PASS" : "FAIL",
              8 - g_failures);
  return g_failures;
}
