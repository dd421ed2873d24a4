#pragma once

#include <optional>

#include "jbt/json_io.hpp"

namespace jbt {

// Suite execution: registered checkers over seeded random instances, one
// CheckResult array per suite, deterministic per (config, build). Substreams
// derive from (master_seed, suite name, trial index), so trial order is
// irrelevant.

struct TrialConfig {
  std::vector<FactorDescriptor> factors;
  int trials = 100;
  std::uint64_t master_seed = 1;
  std::optional<double> tol_ineq;    // slack override for the pass flag
  std::vector<std::string> suites;
  std::string output_path;           // empty: stdout
};

TrialConfig config_from_json(const ordered_json& j);
ordered_json config_to_json(const TrialConfig& cfg);

const std::vector<std::string>& registered_suites();

struct SuiteRun {
  ordered_json report;
  bool all_pass = true;
};

SuiteRun run_suite(const TrialConfig& cfg);

}  // namespace jbt
