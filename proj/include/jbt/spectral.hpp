#pragma once

#include <vector>

#include "jbt/peirce.hpp"

namespace jbt {

// Atomic and spectral decompositions, the minimal-tripotent seminorms, and
// interval spectral resolutions.
//
// Backends: type 1 by one-sided Jacobi SVD, type 3 by Autonne-Takagi, type 2
// by SVD pair-clustering plus a quaternionic peeling of the cluster
// tripotents, spin by the closed-form quadratic for the two singular values.

struct AtomicDecomposition {
  std::vector<double> lambdas;  // nonincreasing, positive
  std::vector<Tripotent> atoms; // pairwise orthogonal minimal tripotents
};

struct SpectralDecomposition {
  std::vector<double> sigmas;        // strictly decreasing
  std::vector<Tripotent> resolutions;
  std::vector<int> multiplicities;   // rank of each resolution
};

AtomicDecomposition atomic_decompose(const Element& x);

// Groups atomic terms whose singular values sit within tol::gap_rel of each
// other (relative to lambda_1).
SpectralDecomposition spectral_decompose(const Element& x);

Element reconstruct(const AtomicDecomposition& dec, const FactorDescriptor& f);

std::vector<double> singular_values(const Element& x);

// ||x||_v = ||P2(v){x,x,v}||^(1/2) for minimal v.
double seminorm_v(const Element& x, const Tripotent& v);

// ||x||_{p,u_1..u_n} = (sum_i ||x||_{u_i}^p)^(1/p), us pairwise orthogonal
// minimal, p >= 1.
double seminorm_p(const Element& x, const std::vector<Tripotent>& us, double p);

// s(x) for norm-one x: the spectral resolution of the sigma_1 cluster.
Tripotent support_tripotent(const Element& x, bool require_norm_one = true);

// Sum of atoms with lambda in [lo, hi]; the boundaries must clear every
// singular value by the clustering margin.
Tripotent spectral_resolution(const Element& x, double lo, double hi);

// Maximal family of pairwise orthogonal minimal tripotents in some U2(e).
struct Frame {
  std::vector<Tripotent> tripotents;
};

// Independent decomposition oracle: the nonzero spectrum of L(x,x)
// restricted to the subtriple generated by x (the span of the odd powers),
// i.e. the distinct squared singular values in decreasing order. Every
// factor backend is validated against this.
std::vector<double> subtriple_spectrum_oracle(const Element& x);

}  // namespace jbt
