#ifndef CESPDC_VERIFY_HPP
#define CESPDC_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace cespdc {

struct VerificationCheck {
  std::string name;
  double worst_deviation;
  double tolerance;
  bool passed() const { return worst_deviation < tolerance; }
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }
};

/// Runs the full internal cross-validation suite on randomized parameter
/// sweeps (deterministic for a fixed seed): symplectic invariant, dual-path
/// Gamma/Upsilon, closed-form vs quadrature F(k), frequency-domain comb vs
/// time-domain moment oracle, steady-state dual path, and the single-mode
/// dual path.
VerificationReport run_verification(std::uint64_t seed = 20260823);

} // namespace cespdc

#endif // CESPDC_VERIFY_HPP
