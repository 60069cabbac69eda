#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace modegate::verify {

// One cross-check over a batch of randomized instances. worst_error is
// relative for the *_vs_* checks and absolute for the half-gate identity
// (which is pinned to χ/2 = π/16 by calibration).
struct CheckResult {
  std::string name;
  double worst_error = 0.0;
  double tolerance = 0.0;
  int instances = 0;
  bool passed = false;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

// Closed forms against the brute-force quadrature oracle, plus the internal
// algebraic identities (factorization, parity-split α, small-δk series).
// chi_scale multiplies every χ closed-form evaluation; the shipping value is
// 1.0 and anything else must trip the χ cross-check — a mutation-sanity hook
// so the test suite can prove the harness actually bites.
VerifyReport run_suite(std::uint64_t seed, double chi_scale = 1.0);

}  // namespace modegate::verify
