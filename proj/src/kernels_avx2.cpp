#include "jbt/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#define JBT_HAVE_AVX2_TU 1
#include <immintrin.h>
#endif

namespace jbt::kernels::detail {

#ifdef JBT_HAVE_AVX2_TU

#define JBT_AVX2 __attribute__((target("avx2")))

namespace {

// swap re/im within each complex pair
JBT_AVX2 inline __m256d swap_pairs(__m256d v) {
  return _mm256_permute_pd(v, 0b0101);
}

JBT_AVX2 inline __m256d negate(__m256d v) {
  return _mm256_xor_pd(v, _mm256_set1_pd(-0.0));
}

JBT_AVX2 void drot_avx2(double* x, double* y, std::size_t n, double c,
                        double s) {
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d sv = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(x + i, _mm256_add_pd(_mm256_mul_pd(cv, xv),
                                          _mm256_mul_pd(sv, yv)));
    _mm256_storeu_pd(y + i, _mm256_sub_pd(_mm256_mul_pd(cv, yv),
                                          _mm256_mul_pd(sv, xv)));
  }
  for (; i < n; ++i) {
    const double xi = x[i], yi = y[i];
    x[i] = c * xi + s * yi;
    y[i] = c * yi - s * xi;
  }
}

JBT_AVX2 void zrot_avx2(cplx* x, cplx* y, std::size_t n, double c, cplx s) {
  const double sr = s.real(), si = s.imag();
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d srv = _mm256_set1_pd(sr);
  const __m256d siv = _mm256_set1_pd(si);
  double* xd = reinterpret_cast<double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    const __m256d p = _mm256_addsub_pd(_mm256_mul_pd(srv, yv),
                                       _mm256_mul_pd(siv, swap_pairs(yv)));
    const __m256d q = _mm256_addsub_pd(
        _mm256_mul_pd(srv, xv), negate(_mm256_mul_pd(siv, swap_pairs(xv))));
    _mm256_storeu_pd(xd + 2 * i, _mm256_add_pd(_mm256_mul_pd(cv, xv), p));
    _mm256_storeu_pd(yd + 2 * i, _mm256_sub_pd(_mm256_mul_pd(cv, yv), q));
  }
  for (; i < n; ++i) {
    const double xr = xd[2 * i], xi = xd[2 * i + 1];
    const double yr = yd[2 * i], yi = yd[2 * i + 1];
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

JBT_AVX2 void dgemm_avx2(const double* a, const double* b, double* c, int m,
                         int k, int n) {
  for (int i = 0; i < m; ++i) {
    double* ci = c + std::size_t(i) * n;
    for (int j = 0; j < n; ++j) ci[j] = 0.0;
    for (int kk = 0; kk < k; ++kk) {
      const double aik = a[std::size_t(i) * k + kk];
      const __m256d av = _mm256_set1_pd(aik);
      const double* bk = b + std::size_t(kk) * n;
      int j = 0;
      for (; j + 4 <= n; j += 4) {
        const __m256d cv = _mm256_loadu_pd(ci + j);
        const __m256d bv = _mm256_loadu_pd(bk + j);
        _mm256_storeu_pd(ci + j, _mm256_add_pd(cv, _mm256_mul_pd(av, bv)));
      }
      for (; j < n; ++j) ci[j] += aik * bk[j];
    }
  }
}

JBT_AVX2 void zgemm_avx2(const cplx* a, const cplx* b, cplx* c, int m, int k,
                         int n) {
  double* cd = reinterpret_cast<double*>(c);
  const double* bd = reinterpret_cast<const double*>(b);
  for (int i = 0; i < m; ++i) {
    double* ci = cd + 2 * std::size_t(i) * n;
    for (int j = 0; j < 2 * n; ++j) ci[j] = 0.0;
    for (int kk = 0; kk < k; ++kk) {
      const cplx aik = a[std::size_t(i) * k + kk];
      const double ar = aik.real(), ai = aik.imag();
      const __m256d arv = _mm256_set1_pd(ar);
      const __m256d aiv = _mm256_set1_pd(ai);
      const double* bk = bd + 2 * std::size_t(kk) * n;
      int j = 0;
      for (; j + 2 <= n; j += 2) {
        const __m256d bv = _mm256_loadu_pd(bk + 2 * j);
        const __m256d prod = _mm256_addsub_pd(
            _mm256_mul_pd(arv, bv), _mm256_mul_pd(aiv, swap_pairs(bv)));
        const __m256d cv = _mm256_loadu_pd(ci + 2 * j);
        _mm256_storeu_pd(ci + 2 * j, _mm256_add_pd(cv, prod));
      }
      for (; j < n; ++j) {
        const double br = bk[2 * j], bi = bk[2 * j + 1];
        ci[2 * j] += ar * br - ai * bi;
        ci[2 * j + 1] += ar * bi + ai * br;
      }
    }
  }
}

JBT_AVX2 double ddot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i),
                                           _mm256_loadu_pd(y + i)));
  }
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d sum2 = _mm_add_pd(lo, hi);       // (a0+a2, a1+a3)
  const __m128d h = _mm_hadd_pd(sum2, sum2);     // (a0+a2)+(a1+a3)
  double s = _mm_cvtsd_f64(h);
  for (std::size_t i = n4; i < n; ++i) s += x[i] * y[i];
  return s;
}

JBT_AVX2 cplx zdotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  __m256d accp = _mm256_setzero_pd();
  __m256d accq = _mm256_setzero_pd();
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  const std::size_t n2 = n & ~std::size_t(1);
  for (std::size_t i = 0; i < n2; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    accp = _mm256_add_pd(accp, _mm256_mul_pd(xv, yv));
    accq = _mm256_add_pd(accq, _mm256_mul_pd(swap_pairs(xv), yv));
  }
  const __m128d plo = _mm256_castpd256_pd128(accp);
  const __m128d phi = _mm256_extractf128_pd(accp, 1);
  const __m128d ps = _mm_add_pd(plo, phi);
  double re = _mm_cvtsd_f64(_mm_hadd_pd(ps, ps));
  const __m128d qlo = _mm256_castpd256_pd128(accq);
  const __m128d qhi = _mm256_extractf128_pd(accq, 1);
  const __m128d qs = _mm_add_pd(qlo, qhi);
  double im = _mm_cvtsd_f64(_mm_hsub_pd(qs, qs));
  for (std::size_t i = n2; i < n; ++i) {
    const double xr = xd[2 * i], xi = xd[2 * i + 1];
    const double yr = yd[2 * i], yi = yd[2 * i + 1];
    re += xr * yr + xi * yi;
    im += xi * yr - xr * yi;
  }
  return {re, im};
}

}  // namespace

const Table avx2_table = {drot_avx2, zrot_avx2,  dgemm_avx2,
                          zgemm_avx2, ddot_avx2, zdotc_avx2};
bool avx2_compiled() { return true; }

#else

const Table avx2_table = {nullptr, nullptr, nullptr, nullptr, nullptr, nullptr};
bool avx2_compiled() { return false; }

#endif

}  // namespace jbt::kernels::detail
