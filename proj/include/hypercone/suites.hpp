#pragma once

// Verification campaigns behind `hypercone verify`.

#include <json.hpp>

#include <cstdint>
#include <string>

#include "hypercone/tolerances.hpp"

namespace hypercone {

struct SuiteConfig {
  std::string suite = "all";  // identities | equivalence | inclusions | all
  int nMin = 2;
  int nMax = 6;
  int trials = 200;
  std::uint64_t seed = 1;
  double band = 1e-6;  // relative margin band excluded from agreement checks
  Tolerances tol{};
};

struct SuiteOutcome {
  bool passed = false;
  nlohmann::json report;
};

/// Throws ArgumentError for an unknown suite or an n range outside 2..8.
SuiteOutcome run_suites(const SuiteConfig& config);

inline constexpr int kMaxSuiteN = 8;

}  // namespace hypercone
