#pragma once

#include <cassert>
#include <cmath>
#include <vector>

#include "jbt/kernels.hpp"

namespace jbt {

// Row-major dense matrices at desk sizes. Plain value types; the heavy
// entry points route through the kernel layer.

struct RMat {
  int rows = 0, cols = 0;
  std::vector<double> a;

  RMat() = default;
  RMat(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[std::size_t(i) * cols + j]; }
  double operator()(int i, int j) const { return a[std::size_t(i) * cols + j]; }

  static RMat identity(int n) {
    RMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
};

struct CMat {
  int rows = 0, cols = 0;
  std::vector<cplx> a;

  CMat() = default;
  CMat(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c) {}

  cplx& operator()(int i, int j) { return a[std::size_t(i) * cols + j]; }
  cplx operator()(int i, int j) const { return a[std::size_t(i) * cols + j]; }

  static CMat identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline RMat operator*(const RMat& x, const RMat& y) {
  assert(x.cols == y.rows);
  RMat z(x.rows, y.cols);
  kernels::dgemm(x.a.data(), y.a.data(), z.a.data(), x.rows, x.cols, y.cols);
  return z;
}

inline CMat operator*(const CMat& x, const CMat& y) {
  assert(x.cols == y.rows);
  CMat z(x.rows, y.cols);
  kernels::zgemm(x.a.data(), y.a.data(), z.a.data(), x.rows, x.cols, y.cols);
  return z;
}

inline RMat operator+(const RMat& x, const RMat& y) {
  assert(x.rows == y.rows && x.cols == y.cols);
  RMat z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
  return z;
}

inline RMat operator-(const RMat& x, const RMat& y) {
  assert(x.rows == y.rows && x.cols == y.cols);
  RMat z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
  return z;
}

inline RMat operator*(double s, const RMat& x) {
  RMat z = x;
  for (auto& v : z.a) v *= s;
  return z;
}

inline CMat operator+(const CMat& x, const CMat& y) {
  assert(x.rows == y.rows && x.cols == y.cols);
  CMat z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
  return z;
}

inline CMat operator-(const CMat& x, const CMat& y) {
  assert(x.rows == y.rows && x.cols == y.cols);
  CMat z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
  return z;
}

inline CMat operator*(cplx s, const CMat& x) {
  CMat z = x;
  for (auto& v : z.a) v *= s;
  return z;
}

inline RMat transpose(const RMat& x) {
  RMat z(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z(j, i) = x(i, j);
  return z;
}

inline CMat transpose(const CMat& x) {
  CMat z(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z(j, i) = x(i, j);
  return z;
}

inline CMat conj(const CMat& x) {
  CMat z = x;
  for (auto& v : z.a) v = std::conj(v);
  return z;
}

inline CMat adjoint(const CMat& x) { return conj(transpose(x)); }

// trace inner product <x,y> = tr(x y^*) = sum_ij x_ij conj(y_ij)
inline cplx dot(const CMat& x, const CMat& y) {
  assert(x.rows == y.rows && x.cols == y.cols);
  return kernels::zdotc(x.a.data(), y.a.data(), x.a.size());
}

inline double frobenius(const CMat& x) {
  return std::sqrt(std::abs(dot(x, x).real()));
}

inline double frobenius(const RMat& x) {
  const double s = kernels::ddot(x.a.data(), x.a.data(), x.a.size());
  return std::sqrt(s);
}

inline double max_abs(const CMat& x) {
  double m = 0.0;
  for (const auto& v : x.a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace jbt
