#pragma once

#include <string>
#include <vector>

namespace padic {

struct SelftestOptions {
  /// Fault injection for testing the suite's own sensitivity: flips the sign
  /// of the closed-form characteristic function at one dual circle before
  /// the oracle comparison. A healthy suite must fail when this is set.
  bool inject_phi_sign_flip = false;
  bool verbose = true;
};

struct SelftestResult {
  unsigned checks = 0;
  unsigned failures = 0;
  double seconds = 0.0;
  std::vector<std::string> failed;
  bool ok() const { return failures == 0; }
};

/// Runs the oracle-equivalence and invariant suite at desk scale: closed
/// forms against brute-force character sums, densities against dense
/// convolution, moment certificates, kernel mass checks, decay diagnostics
/// and sampler statistics. Hermetic (no files, no network) and well under a
/// minute.
SelftestResult run_selftest(const SelftestOptions& opts = {});

}  // namespace padic
