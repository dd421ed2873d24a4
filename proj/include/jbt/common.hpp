#pragma once

#include <stdexcept>
#include <string>

namespace jbt {

// Failure modes surfaced by the library. Checkers return structured results;
// contract violations throw.
enum class Err {
  ShapeMismatch,
  MembershipViolation,
  FactorMismatch,
  NotATripotent,
  NotMinimal,
  ZeroElement,
  UnsupportedFactor,
  RankOrderViolation,
  RankMismatch,
  NotOrthogonal,
  BadExponent,
  NotNormOne,
  BoundaryCollision,
  FrameMismatch,
  MarginViolation,
  DeltaTooLarge,
  DegenerateGap,
  DeltaExceeded,
  OutOfBall,
  UnsatisfiableModel,
  ConfigError,
  Internal,
};

const char* err_name(Err e);

struct Error : std::runtime_error {
  Err code;
  Error(Err c, const std::string& msg)
      : std::runtime_error(std::string(err_name(c)) + ": " + msg), code(c) {}
};

// Working tolerances. Double precision with moderate condition numbers at
// desk sizes; every inequality check carries explicit slack.
namespace tol {
inline constexpr double mem_rel = 1e-10;     // membership defect, relative
inline constexpr double eq_rel = 1e-9;       // equalities, relative
inline constexpr double ineq_abs = 1e-8;     // inequality slack, absolute
inline constexpr double gap_rel = 1e-6;      // spectral clustering, relative
inline constexpr double eig_bucket = 1e-7;   // Peirce eigenvalue buckets
inline constexpr double rank_rel = 1e-9;     // support cutoff, relative
}  // namespace tol

}  // namespace jbt
