#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cespdc/comb.hpp"
#include "cespdc/oracle.hpp"
#include "cespdc/single_mode.hpp"

using namespace cespdc;

TEST_CASE("vacuum is the fixed point of the passive cavity") {
  const auto cavity = make_cavity(0.9, 0.9, 1.0);
  const auto gain = make_gain(cavity, 0.0);
  MomentState state{};
  for (int i = 0; i < 10; ++i) {
    state = roundtrip_moment_map(state, cavity, gain);
    CHECK(state.n == 0.0);
    CHECK(state.m == 0.0);
  }
  const auto ss = steady_state(cavity, gain);
  CHECK(ss.n == 0.0);
  CHECK(ss.m == 0.0);
}

TEST_CASE("spectral radius of the moment map vs the threshold condition") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> refl(0.2, 0.99);
  std::uniform_real_distribution<double> frac(0.0, 0.999);
  for (int i = 0; i < 200; ++i) {
    const auto cavity = make_cavity(refl(rng), refl(rng), 1.0);
    const auto gain = make_gain_fraction(cavity, frac(rng));
    const double radius = moment_map_spectral_radius(cavity, gain);
    CHECK(radius < 1.0);
    // radius = exp(-2 (r_th - r)); crosses 1 exactly at threshold
    CHECK(std::log(radius) ==
          doctest::Approx(-2.0 * (gain.r_th() - gain.r())).epsilon(1e-10));
  }
}

TEST_CASE("iterative and closed-form steady states agree") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> refl(0.3, 0.99);
  std::uniform_real_distribution<double> frac(0.01, 0.9);
  for (int i = 0; i < 100; ++i) {
    const auto cavity = make_cavity(refl(rng), refl(rng), 1.0);
    const auto gain = make_gain_fraction(cavity, frac(rng));
    const auto iter = steady_state(cavity, gain, 1e-14);
    const auto closed = steady_state_closed(cavity, gain);
    const double scale = std::max(1.0, closed.n);
    CHECK(std::abs(iter.n - closed.n) / scale < 1e-12);
    CHECK(std::abs(iter.m - closed.m) / scale < 1e-12);
    CHECK(closed.physical());
  }
}

TEST_CASE("convergence takes about log(tol)/log(radius) iterations") {
  const auto cavity = make_cavity(0.9, 0.9, 1.0);
  const auto gain = make_gain_fraction(cavity, 0.5);
  const double radius = moment_map_spectral_radius(cavity, gain);
  const double tol = 1e-12;
  const int expected = static_cast<int>(std::log(tol) / std::log(radius));
  MomentState state{};
  const auto target = steady_state_closed(cavity, gain);
  int iterations = 0;
  while (std::abs(state.n - target.n) > tol * std::max(1.0, target.n)) {
    state = roundtrip_moment_map(state, cavity, gain);
    ++iterations;
    REQUIRE(iterations < 10 * expected + 100);
  }
  CHECK(iterations > expected / 4);
  CHECK(iterations < 4 * expected + 50);
}

TEST_CASE("physicality holds along the whole trajectory") {
  const auto cavity = make_cavity(0.8, 0.95, 1.0);
  const auto gain = make_gain_fraction(cavity, 0.8);
  MomentState state{};
  for (int i = 0; i < 2000; ++i) {
    state = roundtrip_moment_map(state, cavity, gain);
    REQUIRE(state.physical());
  }
}

TEST_CASE("steady-state photon number grows with gain and diverges at threshold") {
  const auto cavity = make_cavity(0.9, 0.9, 1.0);
  double prev = -1.0;
  for (double frac : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    const double n = steady_state_closed(cavity, make_gain_fraction(cavity, frac)).n;
    CHECK(n > prev);
    prev = n;
  }
  // 1/(r_th - r) scaling of the divergence
  const double n1 = steady_state_closed(cavity, make_gain_fraction(cavity, 0.999)).n;
  const double n2 = steady_state_closed(cavity, make_gain_fraction(cavity, 0.9995)).n;
  CHECK(n2 / n1 == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("zero gain produces zero output correlators") {
  const auto cavity = make_cavity(0.9, 0.9, 1.0);
  const auto corr = two_time_output_correlators(cavity, make_gain(cavity, 0.0), 10);
  for (int k = 0; k <= 10; ++k) {
    CHECK(corr.normal[k] == 0.0);
    CHECK(corr.anomalous[k] == 0.0);
  }
}

TEST_CASE("correlator lag ratio approaches the transfer-matrix eigenvalue") {
  const auto cavity = make_cavity(0.85, 0.9, 1.0);
  const auto gain = make_gain_fraction(cavity, 0.5);
  const auto corr = two_time_output_correlators(cavity, gain, 60);
  const double lambda = cavity.roundtrip_amplitude() * std::exp(gain.r());
  CHECK(corr.normal[60] / corr.normal[59] == doctest::Approx(lambda).epsilon(1e-6));
  CHECK(corr.anomalous[60] / corr.anomalous[59] ==
        doctest::Approx(lambda).epsilon(1e-6));
}

TEST_CASE("oracle comb matches the frequency-domain comb: master gate") {
  SUBCASE("pinned fixture r1 = r2 = 0.9, r = 0.5 r_th") {
    const auto cavity = make_cavity(0.9, 0.9, 1.0);
    const auto gain = make_gain_fraction(cavity, 0.5);
    const auto comb = g2_comb(cavity, gain, 30);
    const auto oracle = g2_from_moments(two_time_output_correlators(cavity, gain, 30));
    const double w0 = comb.weights[0];
    for (int k = 0; k <= 30; ++k)
      CHECK(std::abs(comb.weights[k] / w0 - oracle.weights[k]) < 1e-8);
    CHECK(std::abs(comb.background / w0 - oracle.background) < 1e-8);
  }

  SUBCASE("random parameter grid") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> refl(0.3, 0.99);
    std::uniform_real_distribution<double> frac(0.01, 0.95);
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
      const auto cavity = make_cavity(refl(rng), refl(rng), 1.0);
      const auto gain = make_gain_fraction(cavity, frac(rng));
      const auto comb = g2_comb(cavity, gain, 30);
      const auto oracle =
          g2_from_moments(two_time_output_correlators(cavity, gain, 30));
      const double w0 = comb.weights[0];
      for (int k = 0; k <= 30; ++k)
        worst = std::max(worst, std::abs(comb.weights[k] / w0 - oracle.weights[k]));
      worst = std::max(worst, std::abs(comb.background / w0 - oracle.background));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("oracle background fraction increases with gain") {
  const auto cavity = make_cavity(0.9, 0.9, 1.0);
  double prev = -1.0;
  for (double frac : {0.05, 0.3, 0.6, 0.9}) {
    const auto oracle = g2_from_moments(
        two_time_output_correlators(cavity, make_gain_fraction(cavity, frac), 5));
    const double bg = oracle.background / (1.0 + oracle.background);
    CHECK(bg > prev);
    prev = bg;
  }
}

TEST_CASE("low-gain, high-finesse oracle envelope approaches the Lu-Ou model") {
  const auto cavity = make_cavity(0.99, 0.99, 1.0);
  const auto gain = make_gain_fraction(cavity, 0.005);
  const auto oracle = g2_from_moments(two_time_output_correlators(cavity, gain, 50));
  const auto sm = from_cavity(cavity, gain);
  const double g2s0 = g2_single(sm, 0.0);
  for (int k = 0; k <= 50; ++k) {
    const double env_oracle = (oracle.weights[k] + oracle.background) /
                              (1.0 + oracle.background);
    const double env_single = g2_single(sm, k * cavity.tau()) / g2s0;
    CHECK(std::abs(env_oracle - env_single) < 0.001);
  }
}

TEST_CASE("correlator sequence validation") {
  CHECK_THROWS_AS(g2_from_moments(OutputCorrelators{}), std::invalid_argument);
}
