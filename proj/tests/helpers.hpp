#pragma once

#include <initializer_list>
#include <vector>

#include "jbt/checks.hpp"

namespace jbt::testing {

inline Element mat_element(const FactorDescriptor& f,
                           std::initializer_list<std::initializer_list<cplx>> rows) {
  const auto [r, c] = f.shape();
  CMat m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (const cplx& v : row) m(i, j++) = v;
    ++i;
  }
  return validate_element(f, m);
}

// E_ij in a matrix factor (symmetrised for types 2/3 where needed).
inline Element unit_element(const FactorDescriptor& f, int i, int j) {
  const auto [r, c] = f.shape();
  CMat m(r, c);
  m(i, j) = 1;
  return Element{f, std::move(m)};
}

inline Element diag_element(const FactorDescriptor& f,
                            std::initializer_list<double> values) {
  const auto [r, c] = f.shape();
  CMat m(r, c);
  int i = 0;
  for (const double v : values) m(i, i) = v, ++i;
  return Element{f, std::move(m)};
}

inline Element spin_element(int d, std::initializer_list<cplx> values) {
  CMat m(d, 1);
  int i = 0;
  for (const cplx& v : values) m(i++, 0) = v;
  return Element{FactorDescriptor::spin(d), std::move(m)};
}

// The rank-one projection [[a, b], [b, d]] used throughout section 4 of the
// calculus: a*d = b^2, a^2 + 2 b^2 + d^2 = 1.
inline Element half_projection(const FactorDescriptor& f) {
  return mat_element(f, {{0.5, 0.5}, {0.5, 0.5}});
}

inline std::vector<FactorDescriptor> desk_factors() {
  return {FactorDescriptor::type1(3, 4), FactorDescriptor::type2(4),
          FactorDescriptor::type3(3), FactorDescriptor::spin(6)};
}

}  // namespace jbt::testing
