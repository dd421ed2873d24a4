#pragma once

#include <complex>
#include <cstddef>

// Data-parallel inner loops shared by the dense linear algebra in this
// library. Every kernel has a scalar reference implementation and an AVX2
// variant; the two are bitwise-equivalent (the scalar code mirrors the lane
// blocking and reduction order of the vector code, and the build disables
// FP contraction). Selection happens once at startup; set JBT_KERNELS=scalar
// or JBT_KERNELS=avx2 to override the runtime detection.

namespace jbt {

using cplx = std::complex<double>;

namespace kernels {

const char* impl_name();

// Plane rotation: x <- c*x + s*y, y <- c*y - s*x.
void drot(double* x, double* y, std::size_t n, double c, double s);

// Complex plane rotation with real cosine:
//   x <- c*x + s*y, y <- c*y - conj(s)*x.
void zrot(cplx* x, cplx* y, std::size_t n, double c, cplx s);

// Row-major dense products, c = a*b with a m-by-k and b k-by-n.
// c must not alias a or b.
void dgemm(const double* a, const double* b, double* c, int m, int k, int n);
void zgemm(const cplx* a, const cplx* b, cplx* c, int m, int k, int n);

double ddot(const double* x, const double* y, std::size_t n);

// sum_i x[i] * conj(y[i])
cplx zdotc(const cplx* x, const cplx* y, std::size_t n);

namespace detail {

struct Table {
  void (*drot)(double*, double*, std::size_t, double, double);
  void (*zrot)(cplx*, cplx*, std::size_t, double, cplx);
  void (*dgemm)(const double*, const double*, double*, int, int, int);
  void (*zgemm)(const cplx*, const cplx*, cplx*, int, int, int);
  double (*ddot)(const double*, const double*, std::size_t);
  cplx (*zdotc)(const cplx*, const cplx*, std::size_t);
};

extern const Table scalar_table;
extern const Table avx2_table;
bool avx2_compiled();

}  // namespace detail

}  // namespace kernels
}  // namespace jbt
