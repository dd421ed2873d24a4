#include "jbt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace jbt {

namespace {

constexpr double kJacobiEps = 1e-15;
constexpr int kMaxSweeps = 64;

double off_diag_norm(const RMat& a) {
  double s = 0;
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

SymEig sym_eig(const RMat& a_in) {
  const int n = a_in.rows;
  if (n != a_in.cols) throw std::invalid_argument("sym_eig: square input required");
  RMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (a_in(i, j) + a_in(j, i));
  RMat vt = RMat::identity(n);

  const double scale = frobenius(a) + 1.0;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diag_norm(a) <= kJacobiEps * scale) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= kJacobiEps * scale * 1e-2) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t =
            (theta >= 0 ? -1.0 : 1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        kernels::drot(&a(p, 0), &a(q, 0), std::size_t(n), c, s);
        for (int i = 0; i < n; ++i) {
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip + s * aiq;
          a(i, q) = c * aiq - s * aip;
        }
        kernels::drot(&vt(p, 0), &vt(q, 0), std::size_t(n), c, s);
      }
    }
  }

  SymEig out;
  out.values.resize(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i) > a(j, j); });
  out.vectors = RMat(n, n);
  for (int i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]);
    for (int j = 0; j < n; ++j) out.vectors(i, j) = vt(order[i], j);
  }
  return out;
}

Svd svd(const CMat& a_in) {
  if (a_in.rows < a_in.cols) {
    Svd t = svd(adjoint(a_in));
    return Svd{std::move(t.sigma), std::move(t.v), std::move(t.u)};
  }
  const int m = a_in.rows, n = a_in.cols;
  // b holds the columns of a as contiguous rows; vt accumulates the
  // transposed right rotations.
  CMat b = transpose(a_in);
  CMat vt = CMat::identity(n);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double app =
            kernels::zdotc(&b(p, 0), &b(p, 0), std::size_t(m)).real();
        const double aqq =
            kernels::zdotc(&b(q, 0), &b(q, 0), std::size_t(m)).real();
        const cplx g = kernels::zdotc(&b(p, 0), &b(q, 0), std::size_t(m));
        const double ag = std::abs(g);
        if (ag <= kJacobiEps * std::sqrt(app * aqq) || ag == 0.0) continue;
        rotated = true;
        const double theta = (aqq - app) / (2.0 * ag);
        const double t =
            (theta >= 0 ? -1.0 : 1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const cplx s = (g / ag) * (t * c);
        kernels::zrot(&b(p, 0), &b(q, 0), std::size_t(m), c, s);
        kernels::zrot(&vt(p, 0), &vt(q, 0), std::size_t(n), c, s);
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sig(n);
  for (int j = 0; j < n; ++j)
    sig[j] = std::sqrt(
        std::abs(kernels::zdotc(&b(j, 0), &b(j, 0), std::size_t(m)).real()));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return sig[i] > sig[j]; });

  Svd out;
  out.sigma.resize(n);
  out.u = CMat(m, n);
  out.v = CMat(n, n);
  const double tiny = sig.empty() ? 0.0 : sig[order[0]] * 1e-14;
  for (int j = 0; j < n; ++j) {
    const int src = order[j];
    out.sigma[j] = sig[src];
    if (sig[src] > tiny && sig[src] > 0.0) {
      for (int i = 0; i < m; ++i) out.u(i, j) = b(src, i) / sig[src];
    }
    for (int i = 0; i < n; ++i) out.v(i, j) = vt(src, i);
  }
  return out;
}

namespace {

// Pick a complex-orthonormal set out of realified eigenvectors, walking in
// eigenvalue order; each complex-k-dimensional J-invariant eigenspace shows
// up with real dimension 2k and yields k vectors.
struct ComplexPick {
  std::vector<double> values;
  CMat vectors;  // n x want
};

ComplexPick pick_complex(const SymEig& eig, int n, int want,
                         bool skip_negative) {
  ComplexPick out;
  out.vectors = CMat(n, want);
  int got = 0;
  for (int r = 0; r < eig.vectors.rows && got < want; ++r) {
    if (skip_negative && eig.values[r] < -1e-7) break;
    std::vector<cplx> z(n);
    for (int i = 0; i < n; ++i)
      z[i] = cplx(eig.vectors(r, i), eig.vectors(r, n + i));
    for (int k = 0; k < got; ++k) {
      cplx proj = 0;
      for (int i = 0; i < n; ++i) proj += z[i] * std::conj(out.vectors(i, k));
      for (int i = 0; i < n; ++i) z[i] -= proj * out.vectors(i, k);
    }
    double nrm = 0;
    for (int i = 0; i < n; ++i) nrm += std::norm(z[i]);
    nrm = std::sqrt(nrm);
    if (nrm < 0.5) continue;
    for (int i = 0; i < n; ++i) out.vectors(i, got) = z[i] / nrm;
    out.values.push_back(eig.values[r]);
    ++got;
  }
  if (got != want) throw std::runtime_error("complex eigenbasis extraction failed");
  return out;
}

}  // namespace

HEig heig(const CMat& a) {
  const int n = a.rows;
  if (n != a.cols) throw std::invalid_argument("heig: square input required");
  RMat re(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cplx h = 0.5 * (a(i, j) + std::conj(a(j, i)));
      re(i, j) = h.real();
      re(i, j + n) = -h.imag();
      re(i + n, j) = h.imag();
      re(i + n, j + n) = h.real();
    }
  }
  const SymEig eig = sym_eig(re);
  ComplexPick pick = pick_complex(eig, n, n, false);
  HEig out;
  out.values = std::move(pick.values);
  out.vectors = std::move(pick.vectors);
  return out;
}

Takagi takagi(const CMat& a_in) {
  const int n = a_in.rows;
  if (n != a_in.cols) throw std::invalid_argument("takagi: square input required");
  // Con-eigenvalue problem a conj(y) = sigma y realified: eigenpairs of
  // [[Re a, Im a], [Im a, -Re a]] at +sigma carry the Takagi vectors.
  RMat t(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cplx s = 0.5 * (a_in(i, j) + a_in(j, i));
      t(i, j) = s.real();
      t(i, j + n) = s.imag();
      t(i + n, j) = s.imag();
      t(i + n, j + n) = -s.real();
    }
  }
  const SymEig eig = sym_eig(t);
  ComplexPick pick = pick_complex(eig, n, n, true);
  Takagi out;
  out.sigma.resize(n);
  for (int j = 0; j < n; ++j) out.sigma[j] = std::max(pick.values[j], 0.0);
  out.y = std::move(pick.vectors);
  return out;
}

double op_norm(const RMat& a) {
  RMat g = transpose(a) * a;
  const SymEig eig = sym_eig(g);
  return eig.values.empty() ? 0.0 : std::sqrt(std::max(eig.values[0], 0.0));
}

double op_norm(const CMat& a) {
  const Svd s = svd(a);
  return s.sigma.empty() ? 0.0 : s.sigma[0];
}

RMat range_basis(const RMat& p, double cutoff) {
  const SymEig eig = sym_eig(0.5 * (p + transpose(p)));
  int r = 0;
  while (r < int(eig.values.size()) && eig.values[r] > cutoff) ++r;
  RMat basis(p.rows, r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < p.rows; ++i) basis(i, j) = eig.vectors(j, i);
  return basis;
}

}  // namespace jbt
