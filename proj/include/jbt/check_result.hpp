#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "jbt/common.hpp"

namespace jbt {

// Outcome record of one theorem check: measured quantities against the
// bound, with margin = bound - measured. pass <=> margin >= -tol::ineq_abs.
struct CheckResult {
  std::string name;
  std::string inputs_digest;
  std::map<std::string, double> measured;
  double bound = 0.0;
  double margin = 0.0;
  bool pass = false;
  std::int64_t samples = 0;
  int recorded = 0;  // number of (measured, bound) pairs folded in

  // Folds one (measured, bound) pair in: keeps the worst margin as the
  // headline, records the quantity under `key`.
  void record(const std::string& key, double value, double value_bound);
  void finish();  // sets pass from margin
};

// Slack used for the pass flag; defaults to tol::ineq_abs and can be
// overridden by a TrialConfig.
double runtime_ineq_slack();
void set_runtime_ineq_slack(double slack);

// FNV-1a digest of whatever byte stream the caller feeds it.
struct Digest {
  std::uint64_t h = 1469598103934665603ull;
  void feed(const void* p, std::size_t n);
  void feed(double v);
  void feed(const std::string& s);
  std::string hex() const;
};

}  // namespace jbt
