#pragma once

#include <string>
#include <utility>
#include <vector>

#include "jbt/common.hpp"
#include "jbt/matrix.hpp"

namespace jbt {

// Cartan factors of types 1-4 at finite dimension. Type 1 is p-by-q complex
// matrices, types 2/3 are skew-symmetric/symmetric n-by-n matrices under the
// transpose, type 4 is the complex spin factor with the componentwise
// conjugation. The exceptional types are deliberately unrepresentable.

enum class FactorKind { Type1, Type2, Type3, Spin };

struct FactorDescriptor {
  FactorKind kind = FactorKind::Type1;
  int rows = 0, cols = 0;  // Type1
  int n = 0;               // Type2 / Type3
  int dim = 0;             // Spin

  static FactorDescriptor type1(int p, int q);
  static FactorDescriptor type2(int n);  // n >= 2
  static FactorDescriptor type3(int n);
  static FactorDescriptor spin(int d);  // d >= 2

  bool operator==(const FactorDescriptor&) const = default;

  bool is_matrix() const { return kind != FactorKind::Spin; }
  std::pair<int, int> shape() const;  // storage shape of an element
  int complex_dim() const;
  int max_rank() const;
  std::string str() const;  // "type1:3x4", "type2:4", "spin:6"
};

// "type1:PxQ | type2:N | type3:N | spin:D"
FactorDescriptor parse_factor(const std::string& spec);

struct Element {
  FactorDescriptor factor;
  CMat data;  // matrix, or dim-by-1 for spin
};

Element zero_element(const FactorDescriptor& f);

// Entrywise defect against the factor's membership constraint (skew or
// symmetric closure; shape is the caller's problem).
double membership_defect(const FactorDescriptor& f, const CMat& data);

// Checks shape and membership within tol::mem_rel * (1 + max entry).
Element validate_element(const FactorDescriptor& f, const CMat& data);

// Elementwise algebra; factors must match.
Element operator+(const Element& x, const Element& y);
Element operator-(const Element& x, const Element& y);
Element operator*(cplx s, const Element& x);

// Canonical inner product: tr(x y^*) for matrix types, (x|y) for spin.
cplx inner(const Element& x, const Element& y);
Element conj_element(const Element& x);  // spin conjugation / entrywise

// Coordinates in a fixed complex-orthonormal basis of the factor, and the
// realification [Re c; Im c] used to represent (anti)linear operators.
std::vector<cplx> to_coords(const Element& x);
Element from_coords(const FactorDescriptor& f, const std::vector<cplx>& c);
std::vector<double> realify(const Element& x);
Element unrealify(const FactorDescriptor& f, const std::vector<double>& v);

// {x,y,z}: 1/2 (x y* z + z y* x) on matrix factors,
// (x|y)z + (z|y)x - (x|conj(z)) conj(y) on spin factors.
Element triple_product(const Element& x, const Element& y, const Element& z);

// x^[2k+1], x^[1] = x, x^[2k+1] = {x, x, x^[2k-1]}.
Element odd_power(const Element& x, int k);

// The factor norm: largest singular value for matrix types, the spin norm
// ||x||^2 = (x|x) + sqrt((x|x)^2 - |(x|conj(x))|^2) for spin.
double norm(const Element& x);

// A real-linear operator on the realification of a factor. Complex-linear
// maps commute with the i-action J, conjugate-linear maps anticommute.
struct RealLinearMap {
  FactorDescriptor factor;
  RMat m;  // 2d x 2d

  Element apply(const Element& x) const;
  static RealLinearMap identity(const FactorDescriptor& f);
};

RealLinearMap operator*(const RealLinearMap& a, const RealLinearMap& b);
RealLinearMap operator+(const RealLinearMap& a, const RealLinearMap& b);
RealLinearMap operator-(const RealLinearMap& a, const RealLinearMap& b);
RealLinearMap operator*(double s, const RealLinearMap& a);
double op_norm(const RealLinearMap& a);

// Builds the matrix of x -> op(x) by applying op to the 2d real basis
// elements; works for linear and antilinear op alike.
template <typename F>
RealLinearMap build_map(const FactorDescriptor& f, F&& op) {
  const int d = f.complex_dim();
  RealLinearMap out{f, RMat(2 * d, 2 * d)};
  std::vector<cplx> coords(d, cplx(0, 0));
  for (int col = 0; col < 2 * d; ++col) {
    coords.assign(d, cplx(0, 0));
    coords[col % d] = col < d ? cplx(1, 0) : cplx(0, 1);
    const std::vector<double> image = realify(op(from_coords(f, coords)));
    for (int i = 0; i < 2 * d; ++i) out.m(i, col) = image[i];
  }
  return out;
}

// L(a,b) x = {a,b,x} and Q(a) x = {a,x,a}.
RealLinearMap operator_L(const Element& a, const Element& b);
RealLinearMap operator_Q(const Element& a);

void require_same_factor(const Element& x, const Element& y);

}  // namespace jbt
