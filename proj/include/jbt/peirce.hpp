#pragma once

#include <array>

#include "jbt/check_result.hpp"
#include "jbt/factor.hpp"

namespace jbt {

// Tripotent verification, Peirce projections, tripotent relations, and the
// positivity facts used by every perturbation bound downstream.

struct Tripotent {
  Element element;
  int rank = 0;        // triple rank: minimal orthogonal summands
  bool minimal = false;

  const FactorDescriptor& factor() const { return element.factor; }
  bool is_zero() const { return rank == 0; }
};

double tripotent_defect(const Element& x);  // ||{x,x,x} - x||
bool is_tripotent(const Element& x);

// Validates and caches rank/minimality; throws NotATripotent.
Tripotent make_tripotent(const Element& x);

// Fast path for constructions that produce tripotents by design; the defect
// is still asserted.
Tripotent trusted_tripotent(Element x, int rank);

struct PeirceSystem {
  Tripotent e;
  RealLinearMap p2, p1, p0;
  std::array<int, 3> dims{};  // complex dims of U2, U1, U0
};

// Peirce projections from the Q/L formulas, cross-checked against the
// spectral projections of the symmetrised L(e,e); eigenvalues off the
// {0, 1/2, 1} buckets raise NotATripotent.
PeirceSystem peirce(const Tripotent& e);

struct TripotentRelation {
  bool orthogonal = false;
  bool leq = false;         // u <= v
  bool collinear = false;
  bool governs_uv = false;  // u governs v
  bool governs_vu = false;
};

TripotentRelation relation(const Tripotent& u, const Tripotent& v);

bool orthogonal_elements(const Element& x, const Element& y);

// Peirce parts of x relative to a tripotent element e, computed through
// triple products (no operator matrices needed).
Element apply_peirce2(const Element& e, const Element& x);
Element apply_peirce1(const Element& e, const Element& x);
Element apply_peirce0(const Element& e, const Element& x);

struct ExtremeRayComponents {
  double alpha = 0.0, delta = 0.0;
  Element p2part, p0part;
};

// P2(e)v and P0(e)v of a minimal v are multiples of minimal tripotents with
// (alpha + delta)^2 <= 1.
ExtremeRayComponents extreme_ray_components(const Tripotent& e,
                                            const Tripotent& v);

// (i) P2(e){x,x,e} >= 0 in U2(e), (ii) ||{x_j,x_j,e}|| <= ||P2(e){x,x,e}||,
// (iii) ||x_j||^2 <= 4 ||{x_j,x_j,e}|| for the Peirce parts x_j = P_j(e)x.
CheckResult check_peirce_positivity(const Tripotent& e, const Element& x);

}  // namespace jbt
