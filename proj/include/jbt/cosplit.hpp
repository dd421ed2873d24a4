#pragma once

#include "jbt/checks.hpp"

namespace jbt {

// Convex-combination machinery: the norm-control bound, the common support
// tripotent of a family, and the constructive splitter that realises
// perturbations of a convex combination as convex combinations of in-ball
// perturbations.

// measured = ||lam x + (1-lam) y||, bound = min of the quadratic and linear
// forms in d = ||x+y||. The measured map carries both forms plus d so a
// failed quadratic form is fully attributable.
CheckResult convex_norm_bound(const Element& x, const Element& y, double lam);

// The support tripotent shared by every strict convex combination of the
// family (zero when the combinations stay inside the open ball). Each probe
// weight vector is verified against the face property.
Tripotent common_support(const std::vector<Element>& xs,
                         const std::vector<std::vector<double>>& probes);

struct CoSplit {
  std::vector<Element> inputs;
  std::vector<double> weights;
  Element y;
  double epsilon = 0.0;
  double delta_used = 0.0;
  std::vector<Element> outputs;  // x~_j with y = sum_j w_j x~_j
  Tripotent e, f;                // common support; spectral resolution of y
  std::vector<Element> mixtures; // a_j = sum_{i != j} x_i / (n-1)
  std::map<std::string, double> audit;
};

// Computes the admissible radius delta from the constructive recipe
// (largest delta meeting the strict constraints, with a 10% safety factor),
// then splits y. Throws DeltaExceeded when ||y - sum w_i x_i|| > delta.
CoSplit co_split(const std::vector<Element>& xs,
                 const std::vector<double>& lams, const Element& y,
                 double epsilon);

}  // namespace jbt
