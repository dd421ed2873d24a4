#pragma once

#include <vector>

#include "jbt/matrix.hpp"

// Dense factorizations used by the decomposition backends. Jacobi methods
// throughout: sizes stay small (realified dimension <= 128) and one-sided /
// two-sided Jacobi give high relative accuracy without pivoting drama.

namespace jbt {

struct SymEig {
  std::vector<double> values;  // descending
  RMat vectors;                // row i is the eigenvector for values[i]
};

// Cyclic Jacobi for real symmetric input (symmetrised internally).
SymEig sym_eig(const RMat& a);

struct Svd {
  std::vector<double> sigma;  // descending, size min(m,n)
  CMat u;                     // m x min(m,n); zero column where sigma ~ 0
  CMat v;                     // n x min(m,n)
};

// One-sided Jacobi SVD, a = u diag(sigma) v^*.
Svd svd(const CMat& a);

struct HEig {
  std::vector<double> values;  // descending (real)
  CMat vectors;                // n x n, column j for values[j]
};

// Hermitian eigendecomposition via the realification trick.
HEig heig(const CMat& a);

struct Takagi {
  std::vector<double> sigma;  // descending, >= 0
  CMat y;                     // m x m, a = sum_j sigma_j y_j y_j^T
};

// Autonne-Takagi factorisation of a complex symmetric matrix.
Takagi takagi(const CMat& a);

// Largest singular value.
double op_norm(const RMat& a);
double op_norm(const CMat& a);

// Columns of `basis` spanning range(p) for a (realified) projection p,
// orthonormalised; used to restrict operators to Peirce subspaces.
RMat range_basis(const RMat& p, double cutoff = 0.5);

}  // namespace jbt
