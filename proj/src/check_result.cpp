#include "jbt/check_result.hpp"

#include <cstdio>
#include <cstring>

namespace jbt {

void CheckResult::record(const std::string& key, double value,
                         double value_bound) {
  measured[key] = value;
  const double m = value_bound - value;
  if (recorded == 0 || m < margin) {
    margin = m;
    bound = value_bound;
  }
  ++recorded;
  finish();
}

namespace {
double g_ineq_slack = tol::ineq_abs;
}

double runtime_ineq_slack() { return g_ineq_slack; }
void set_runtime_ineq_slack(double slack) { g_ineq_slack = slack; }

void CheckResult::finish() { pass = margin >= -g_ineq_slack; }

void Digest::feed(const void* p, std::size_t n) {
  const unsigned char* b = static_cast<const unsigned char*>(p);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= b[i];
    h *= 1099511628211ull;
  }
}

void Digest::feed(double v) { feed(&v, sizeof v); }

void Digest::feed(const std::string& s) { feed(s.data(), s.size()); }

std::string Digest::hex() const {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace jbt
