#pragma once

#include "jbt/spectral.hpp"

namespace jbt {

// Constructive orthogonalisation. The existence proofs behind these
// operations argue through the bidual; the concrete factors admit direct
// linear-algebra constructions meeting the same contracts, built from the
// column/row supports of the tripotents involved.

// Orthonormal bases of the column and row supports of a matrix tripotent
// (columns of `col` span range(e), columns of `row` span range(e^*)).
struct TripotentSpans {
  CMat col, row;
};
TripotentSpans tripotent_spans(const Tripotent& e);

// Support of x: the sum of atoms with lambda above the relative cutoff, so
// that x lies in U2(r) with P2(r)x = x.
Tripotent range_tripotent(const Element& x);

// A tripotent u of rank <= n with every input inside U2(u). Requires a
// JB*-algebra realisation: type 3, square type 1, or spin.
Tripotent enclose_minimals(const FactorDescriptor& f,
                           const std::vector<Tripotent>& minimals);

// A tripotent u in U2(e) of rank <= n such that everything in
// U2(e) & U0(u) is orthogonal to each input.
Tripotent peirce2_witness(const Tripotent& e,
                          const std::vector<Tripotent>& minimals);

// A tripotent u in U2(e) with rank(u) = rank(e) - rank(f) and u orthogonal
// to f; requires rank(f) < rank(e).
Tripotent complement_tripotent(const Tripotent& e, const Tripotent& f);

// A minimal v in U2(e) with ||x||_v <= lambda_n(x); rank(e) must equal n.
Tripotent minimax_witness(const AtomicDecomposition& x_dec, const Tripotent& e,
                          int n);

// Mutually orthogonal minimals u_1..u_n in U2(e) with ||x||_{u_k} <=
// lambda_k(x), built by peeling witnesses off shrinking complements.
std::vector<Tripotent> witness_family(const AtomicDecomposition& x_dec,
                                      const Tripotent& e, int n);

// Orthonormal columns inside span(space) orthogonal to range(avoid); throws
// if fewer than `want` directions remain.
CMat orthonormal_within(const CMat& space, const CMat& avoid, int want);

}  // namespace jbt
