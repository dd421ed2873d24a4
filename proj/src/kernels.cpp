#include "jbt/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

namespace jbt::kernels {

namespace {

void drot_scalar(double* x, double* y, std::size_t n, double c, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i], yi = y[i];
    x[i] = c * xi + s * yi;
    y[i] = c * yi - s * xi;
  }
}

void zrot_scalar(cplx* x, cplx* y, std::size_t n, double c, cplx s) {
  const double sr = s.real(), si = s.imag();
  double* xd = reinterpret_cast<double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = xd[2 * i], xi = xd[2 * i + 1];
    const double yr = yd[2 * i], yi = yd[2 * i + 1];
    // s*y and conj(s)*x, one rounding per multiply/add (mirrors the
    // mul/addsub sequence of the AVX2 path).
    const double pr = sr * yr - si * yi;
    const double pi = sr * yi + si * yr;
    const double qr = sr * xr - (-(si * xi));
    const double qi = sr * xi + (-(si * xr));
    xd[2 * i] = c * xr + pr;
    xd[2 * i + 1] = c * xi + pi;
    yd[2 * i] = c * yr - qr;
    yd[2 * i + 1] = c * yi - qi;
  }
}

void dgemm_scalar(const double* a, const double* b, double* c, int m, int k,
                  int n) {
  for (int i = 0; i < m; ++i) {
    double* ci = c + std::size_t(i) * n;
    for (int j = 0; j < n; ++j) ci[j] = 0.0;
    for (int kk = 0; kk < k; ++kk) {
      const double aik = a[std::size_t(i) * k + kk];
      const double* bk = b + std::size_t(kk) * n;
      for (int j = 0; j < n; ++j) ci[j] += aik * bk[j];
    }
  }
}

void zgemm_scalar(const cplx* a, const cplx* b, cplx* c, int m, int k, int n) {
  double* cd = reinterpret_cast<double*>(c);
  const double* bd = reinterpret_cast<const double*>(b);
  for (int i = 0; i < m; ++i) {
    double* ci = cd + 2 * std::size_t(i) * n;
    for (int j = 0; j < 2 * n; ++j) ci[j] = 0.0;
    for (int kk = 0; kk < k; ++kk) {
      const cplx aik = a[std::size_t(i) * k + kk];
      const double ar = aik.real(), ai = aik.imag();
      const double* bk = bd + 2 * std::size_t(kk) * n;
      for (int j = 0; j < n; ++j) {
        const double br = bk[2 * j], bi = bk[2 * j + 1];
        ci[2 * j] += ar * br - ai * bi;
        ci[2 * j + 1] += ar * bi + ai * br;
      }
    }
  }
}

double ddot_scalar(const double* x, const double* y, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    acc[0] += x[i] * y[i];
    acc[1] += x[i + 1] * y[i + 1];
    acc[2] += x[i + 2] * y[i + 2];
    acc[3] += x[i + 3] * y[i + 3];
  }
  double s = (acc[0] + acc[2]) + (acc[1] + acc[3]);
  for (std::size_t i = n4; i < n; ++i) s += x[i] * y[i];
  return s;
}

cplx zdotc_scalar(const cplx* x, const cplx* y, std::size_t n) {
  // Lane layout mirrors the AVX2 path: two complex accumulators (even/odd
  // index), component partial sums reduced as (even+odd) pairs.
  double pa = 0, pb = 0, pc = 0, pd = 0;  // x*y componentwise
  double qa = 0, qb = 0, qc = 0, qd = 0;  // swap(x)*y componentwise
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  const std::size_t n2 = n & ~std::size_t(1);
  for (std::size_t i = 0; i < n2; i += 2) {
    pa += xd[2 * i] * yd[2 * i];
    pb += xd[2 * i + 1] * yd[2 * i + 1];
    pc += xd[2 * i + 2] * yd[2 * i + 2];
    pd += xd[2 * i + 3] * yd[2 * i + 3];
    qa += xd[2 * i + 1] * yd[2 * i];
    qb += xd[2 * i] * yd[2 * i + 1];
    qc += xd[2 * i + 3] * yd[2 * i + 2];
    qd += xd[2 * i + 2] * yd[2 * i + 3];
  }
  double re = (pa + pc) + (pb + pd);
  double im = (qa + qc) - (qb + qd);
  for (std::size_t i = n2; i < n; ++i) {
    const double xr = xd[2 * i], xi = xd[2 * i + 1];
    const double yr = yd[2 * i], yi = yd[2 * i + 1];
    re += xr * yr + xi * yi;
    im += xi * yr - xr * yi;
  }
  return {re, im};
}

const detail::Table* select() {
  const char* env = std::getenv("JBT_KERNELS");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return &detail::scalar_table;
    if (std::strcmp(env, "avx2") == 0 && detail::avx2_compiled())
      return &detail::avx2_table;
  }
#if defined(__x86_64__) || defined(__i386__)
  if (detail::avx2_compiled() && __builtin_cpu_supports("avx2"))
    return &detail::avx2_table;
#endif
  return &detail::scalar_table;
}

const detail::Table& table() {
  static const detail::Table* t = select();
  return *t;
}

}  // namespace

namespace detail {
const Table scalar_table = {drot_scalar, zrot_scalar,  dgemm_scalar,
                            zgemm_scalar, ddot_scalar, zdotc_scalar};
}

const char* impl_name() {
  return &table() == &detail::scalar_table ? "scalar" : "avx2";
}

void drot(double* x, double* y, std::size_t n, double c, double s) {
  table().drot(x, y, n, c, s);
}
void zrot(cplx* x, cplx* y, std::size_t n, double c, cplx s) {
  table().zrot(x, y, n, c, s);
}
void dgemm(const double* a, const double* b, double* c, int m, int k, int n) {
  table().dgemm(a, b, c, m, k, n);
}
void zgemm(const cplx* a, const cplx* b, cplx* c, int m, int k, int n) {
  table().zgemm(a, b, c, m, k, n);
}
double ddot(const double* x, const double* y, std::size_t n) {
  return table().ddot(x, y, n);
}
cplx zdotc(const cplx* x, const cplx* y, std::size_t n) {
  return table().zdotc(x, y, n);
}

}  // namespace jbt::kernels
