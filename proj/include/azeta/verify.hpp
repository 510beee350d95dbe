#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "azeta/zeta.hpp"

namespace azeta {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  Rigor kind = Rigor::heuristic;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  int failures() const;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::uint64_t mc_samples = 1000000;
  ZetaOptions zeta;
  bool zeta_checks = true;  // continuation-based checks (slower)
};

// Invariant suite for one phi: matrix flow, homogeneity, volumes, counting,
// theta sums, and zeta identities.
VerifyReport verify_suite(PhiPtr phi, const VerifyOptions& opt = {});

}  // namespace azeta
