#include "jbt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "jbt/linalg.hpp"

namespace jbt {

namespace {

constexpr double kDropRel = 5e-14;  // singular values treated as zero

struct RawAtoms {
  std::vector<double> lambdas;
  std::vector<Element> atoms;
};

RawAtoms decompose_type1(const Element& x) {
  RawAtoms out;
  const Svd s = svd(x.data);
  const double cut = s.sigma.empty() ? 0.0 : kDropRel * s.sigma[0];
  for (std::size_t j = 0; j < s.sigma.size(); ++j) {
    if (s.sigma[j] <= cut || s.sigma[j] == 0.0) break;
    CMat atom(x.data.rows, x.data.cols);
    for (int r = 0; r < x.data.rows; ++r)
      for (int c = 0; c < x.data.cols; ++c)
        atom(r, c) = s.u(r, j) * std::conj(s.v(c, j));
    out.lambdas.push_back(s.sigma[j]);
    out.atoms.push_back(Element{x.factor, std::move(atom)});
  }
  return out;
}

RawAtoms decompose_type3(const Element& x) {
  RawAtoms out;
  const Takagi t = takagi(x.data);
  const double cut = t.sigma.empty() ? 0.0 : kDropRel * t.sigma[0];
  for (std::size_t j = 0; j < t.sigma.size(); ++j) {
    if (t.sigma[j] <= cut || t.sigma[j] == 0.0) break;
    CMat atom(x.data.rows, x.data.cols);
    for (int r = 0; r < x.data.rows; ++r)
      for (int c = 0; c < x.data.cols; ++c) atom(r, c) = t.y(r, j) * t.y(c, j);
    out.lambdas.push_back(t.sigma[j]);
    out.atoms.push_back(Element{x.factor, std::move(atom)});
  }
  return out;
}

// Splits a skew partial isometry into rank-two pair atoms. The antilinear
// map a -> e conj(a) squares to -1 on the column space, so any unit column
// vector a yields the orthonormal pair (a, e conj(a)) and the atom
// b a^T - a b^T, which is then subtracted off.
std::vector<Element> peel_skew_tripotent(const FactorDescriptor& f, CMat e,
                                         int pairs) {
  std::vector<Element> atoms;
  for (int k = 0; k < pairs; ++k) {
    const Svd s = svd(e);
    const int n = e.rows;
    std::vector<cplx> a(n), b(n, cplx(0, 0));
    for (int i = 0; i < n; ++i) a[i] = s.u(i, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b[i] += e(i, j) * std::conj(a[j]);
    // numerical hygiene: project a off b, renormalise
    cplx mix = 0;
    for (int i = 0; i < n; ++i) mix += b[i] * std::conj(a[i]);
    double bn = 0;
    for (int i = 0; i < n; ++i) {
      b[i] -= mix * a[i];
      bn += std::norm(b[i]);
    }
    bn = std::sqrt(bn);
    if (bn < 0.5)
      throw Error(Err::Internal, "skew peel lost the pair partner");
    CMat atom(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        atom(i, j) = (b[i] / bn) * a[j] - a[i] * (b[j] / bn);
    e = e - atom;
    atoms.push_back(Element{f, std::move(atom)});
  }
  return atoms;
}

RawAtoms decompose_type2(const Element& x) {
  RawAtoms out;
  const Svd s = svd(x.data);
  const double sig1 = s.sigma.empty() ? 0.0 : s.sigma[0];
  const double cut = kDropRel * sig1;

  // matrix singular values pair up; one triple singular value per pair
  std::vector<double> lam;
  for (std::size_t j = 0; j < s.sigma.size(); j += 2) {
    if (s.sigma[j] <= cut || s.sigma[j] == 0.0) break;
    if (j + 1 >= s.sigma.size() ||
        std::abs(s.sigma[j] - s.sigma[j + 1]) > 1e-9 * (1.0 + sig1))
      throw Error(Err::Internal, "unpaired singular value in type 2 factor");
    lam.push_back(0.5 * (s.sigma[j] + s.sigma[j + 1]));
  }

  // Cluster pairs, widening until each cluster's partial isometry is a clean
  // skew tripotent (individual SVD vectors inside a degenerate cluster need
  // not respect the skew pairing).
  std::size_t start = 0;
  while (start < lam.size()) {
    std::size_t end = start + 1;
    while (end < lam.size() && lam[end - 1] - lam[end] <= 1e-9 * (1.0 + sig1))
      ++end;
    for (;;) {
      CMat ec(x.data.rows, x.data.cols);
      for (std::size_t p = 2 * start; p < 2 * end; ++p)
        for (int r = 0; r < x.data.rows; ++r)
          for (int c = 0; c < x.data.cols; ++c)
            ec(r, c) += s.u(r, int(p)) * std::conj(s.v(c, int(p)));
      ec = cplx(0.5, 0) * (ec - transpose(ec));
      const Element cand{x.factor, ec};
      if (tripotent_defect(cand) <= 1e-8 * (1.0 + norm(cand))) {
        const double mean =
            std::accumulate(lam.begin() + start, lam.begin() + end, 0.0) /
            double(end - start);
        for (Element& atom :
             peel_skew_tripotent(x.factor, ec, int(end - start))) {
          out.lambdas.push_back(mean);
          out.atoms.push_back(std::move(atom));
        }
        break;
      }
      if (end >= lam.size())
        throw Error(Err::Internal, "type 2 cluster never stabilised");
      ++end;  // widen and retry
    }
    start = end;
  }
  return out;
}

RawAtoms decompose_spin(const Element& x) {
  RawAtoms out;
  const int d = x.data.rows;
  const double s = dot(x.data, x.data).real();
  if (s <= 1e-300) return out;
  cplx q = 0;
  for (const auto& v : x.data.a) q += v * v;
  const double disc = std::sqrt(std::max(s * s - std::norm(q), 0.0));
  const double l1 = std::sqrt(s + disc);
  const double l2 = std::sqrt(std::max(s - disc, 0.0));

  auto push = [&](double lam, std::vector<cplx> vec) {
    CMat m(d, 1);
    m.a = std::move(vec);
    out.lambdas.push_back(lam);
    out.atoms.push_back(Element{x.factor, std::move(m)});
  };

  if (l2 <= 1e-13 * l1) {
    std::vector<cplx> u(d);
    for (int i = 0; i < d; ++i) u[i] = x.data(i, 0) / l1;
    push(l1, std::move(u));
    return out;
  }
  const cplx phase = q / std::abs(q);
  if (l1 - l2 > 1e-7 * l1) {
    const double denom = l1 * l1 - l2 * l2;
    std::vector<cplx> u1(d), u2(d);
    for (int i = 0; i < d; ++i) {
      u1[i] = (l1 * x.data(i, 0) - l2 * phase * std::conj(x.data(i, 0))) / denom;
      u2[i] = phase * std::conj(u1[i]);
    }
    push(l1, std::move(u1));
    push(l2, std::move(u2));
    return out;
  }
  // clustered pair: x = sigma e with conj(e) = conj(phase) e, so
  // g = phase^(-1/2) e is a real unit vector; split g = u + conj(u).
  const double sigma = 0.5 * (l1 + l2);
  const cplx half = std::sqrt(phase);
  std::vector<double> g(d);
  double gn = 0;
  for (int i = 0; i < d; ++i) {
    g[i] = (x.data(i, 0) / (sigma * half)).real();
    gn += g[i] * g[i];
  }
  gn = std::sqrt(gn);
  for (auto& v : g) v /= gn;
  // real unit h orthogonal to g
  std::vector<double> h(d, 0.0);
  int pick = 0;
  for (int i = 1; i < d; ++i)
    if (std::abs(g[i]) < std::abs(g[pick])) pick = i;
  h[pick] = 1.0;
  double hg = 0;
  for (int i = 0; i < d; ++i) hg += h[i] * g[i];
  double hn = 0;
  for (int i = 0; i < d; ++i) {
    h[i] -= hg * g[i];
    hn += h[i] * h[i];
  }
  hn = std::sqrt(hn);
  std::vector<cplx> u1(d), u2(d);
  for (int i = 0; i < d; ++i) {
    u1[i] = half * 0.5 * cplx(g[i], h[i] / hn);
    u2[i] = half * 0.5 * cplx(g[i], -h[i] / hn);
  }
  push(sigma, std::move(u1));
  push(sigma, std::move(u2));
  return out;
}

}  // namespace

AtomicDecomposition atomic_decompose(const Element& x) {
  RawAtoms raw;
  switch (x.factor.kind) {
    case FactorKind::Type1: raw = decompose_type1(x); break;
    case FactorKind::Type2: raw = decompose_type2(x); break;
    case FactorKind::Type3: raw = decompose_type3(x); break;
    case FactorKind::Spin: raw = decompose_spin(x); break;
  }
  // nonincreasing order (type 2 clustering can emit equal values out of order)
  std::vector<std::size_t> order(raw.lambdas.size());
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return raw.lambdas[a] > raw.lambdas[b];
  });

  AtomicDecomposition dec;
  for (const std::size_t idx : order) {
    dec.lambdas.push_back(raw.lambdas[idx]);
    dec.atoms.push_back(trusted_tripotent(std::move(raw.atoms[idx]), 1));
  }

  // backend self-check: reconstruction and pairwise orthogonality
  const double scale = 1.0 + norm(x);
  const double err = norm(reconstruct(dec, x.factor) - x);
  if (err > tol::eq_rel * scale)
    throw Error(Err::Internal, "atomic reconstruction error " + std::to_string(err));
  for (std::size_t i = 0; i < dec.atoms.size(); ++i)
    for (std::size_t j = i + 1; j < dec.atoms.size(); ++j)
      if (!orthogonal_elements(dec.atoms[i].element, dec.atoms[j].element))
        throw Error(Err::Internal, "atoms not orthogonal");
  return dec;
}

Element reconstruct(const AtomicDecomposition& dec, const FactorDescriptor& f) {
  Element acc = zero_element(f);
  for (std::size_t i = 0; i < dec.atoms.size(); ++i)
    acc = acc + cplx(dec.lambdas[i], 0) * dec.atoms[i].element;
  return acc;
}

std::vector<double> singular_values(const Element& x) {
  return atomic_decompose(x).lambdas;
}

SpectralDecomposition spectral_decompose(const Element& x) {
  const AtomicDecomposition dec = atomic_decompose(x);
  SpectralDecomposition sd;
  const double l1 = dec.lambdas.empty() ? 0.0 : dec.lambdas[0];
  std::size_t start = 0;
  while (start < dec.lambdas.size()) {
    std::size_t end = start + 1;
    while (end < dec.lambdas.size() &&
           dec.lambdas[end - 1] - dec.lambdas[end] <= tol::gap_rel * l1)
      ++end;
    Element sum = dec.atoms[start].element;
    double mean = dec.lambdas[start];
    for (std::size_t i = start + 1; i < end; ++i) {
      sum = sum + dec.atoms[i].element;
      mean += dec.lambdas[i];
    }
    sd.sigmas.push_back(mean / double(end - start));
    sd.resolutions.push_back(trusted_tripotent(std::move(sum), int(end - start)));
    sd.multiplicities.push_back(int(end - start));
    start = end;
  }
  return sd;
}

double seminorm_v(const Element& x, const Tripotent& v) {
  require_same_factor(x, v.element);
  if (!v.minimal) throw Error(Err::NotMinimal, "seminorm needs minimal v");
  const Element bracket = triple_product(x, x, v.element);
  const Element proj = triple_product(
      v.element, triple_product(v.element, bracket, v.element), v.element);
  return std::sqrt(norm(proj));
}

double seminorm_p(const Element& x, const std::vector<Tripotent>& us, double p) {
  if (p < 1.0) throw Error(Err::BadExponent, "p >= 1 required");
  for (std::size_t i = 0; i < us.size(); ++i) {
    if (!us[i].minimal) throw Error(Err::NotMinimal, "seminorm family");
    for (std::size_t j = i + 1; j < us.size(); ++j)
      if (!orthogonal_elements(us[i].element, us[j].element))
        throw Error(Err::NotOrthogonal, "seminorm family");
  }
  double acc = 0;
  for (const Tripotent& u : us) acc += std::pow(seminorm_v(x, u), p);
  return std::pow(acc, 1.0 / p);
}

Tripotent support_tripotent(const Element& x, bool require_norm_one) {
  if (require_norm_one && std::abs(norm(x) - 1.0) > 10 * tol::eq_rel)
    throw Error(Err::NotNormOne, "norm " + std::to_string(norm(x)));
  const SpectralDecomposition sd = spectral_decompose(x);
  if (sd.resolutions.empty())
    return Tripotent{zero_element(x.factor), 0, false};
  return sd.resolutions[0];
}

std::vector<double> subtriple_spectrum_oracle(const Element& x) {
  const int d = x.factor.complex_dim();
  const double nx = norm(x);
  if (nx <= 1e-300) return {};

  // orthonormalise the odd powers x, x^[3], x^[5], ...
  CMat basis(d, d);
  int have = 0;
  Element p = cplx(1.0 / nx, 0) * x;
  for (int it = 0; it < d + 1; ++it) {
    std::vector<cplx> z = to_coords(p);
    double zn = 0;
    for (const auto& v : z) zn += std::norm(v);
    zn = std::sqrt(zn);
    if (zn <= 1e-300) break;
    for (auto& v : z) v /= zn;
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < have; ++k) {
        cplx proj = 0;
        for (int i = 0; i < d; ++i) proj += z[i] * std::conj(basis(i, k));
        for (int i = 0; i < d; ++i) z[i] -= proj * basis(i, k);
      }
    double rn = 0;
    for (const auto& v : z) rn += std::norm(v);
    rn = std::sqrt(rn);
    if (rn < 1e-8) break;  // span saturated
    for (int i = 0; i < d; ++i) basis(i, have) = z[i] / rn;
    ++have;
    p = triple_product(x, x, p);
    p = cplx(1.0 / norm(p), 0) * p;
  }
  if (have == 0) return {};

  // complex matrix of L(x,x) in coordinates, restricted to the span
  CMat lmat(d, d);
  for (int col = 0; col < d; ++col) {
    std::vector<cplx> unit(d, cplx(0, 0));
    unit[col] = 1;
    const std::vector<cplx> img =
        to_coords(triple_product(x, x, from_coords(x.factor, unit)));
    for (int i = 0; i < d; ++i) lmat(i, col) = img[i];
  }
  CMat zb(d, have);
  for (int j = 0; j < have; ++j)
    for (int i = 0; i < d; ++i) zb(i, j) = basis(i, j);
  const CMat rest = adjoint(zb) * (lmat * zb);
  const HEig eig = heig(rest);
  std::vector<double> out;
  for (const double v : eig.values)
    if (v > 1e-12 * (1.0 + nx * nx)) out.push_back(v);
  return out;
}

Tripotent spectral_resolution(const Element& x, double lo, double hi) {
  if (lo > hi) throw Error(Err::ConfigError, "empty interval");
  const AtomicDecomposition dec = atomic_decompose(x);
  // boundary margin scales down with narrow windows so that the tight
  // intervals of the continuity schedule stay usable; a window at the float
  // resolution has zero margin and boundary equality counts as inclusion
  const double margin = std::min(
      tol::gap_rel * std::max(dec.lambdas.empty() ? 1.0 : dec.lambdas[0], 1e-12),
      0.05 * (hi - lo));
  Element sum = zero_element(x.factor);
  int count = 0;
  for (std::size_t i = 0; i < dec.lambdas.size(); ++i) {
    const double l = dec.lambdas[i];
    // a window narrower than the float resolution of the spectrum has zero
    // margin; boundary equality then counts as inclusion
    if (margin > 0 &&
        (std::abs(l - lo) <= margin || std::abs(l - hi) <= margin))
      throw Error(Err::BoundaryCollision,
                  "singular value " + std::to_string(l) + " near boundary");
    if (l >= lo && l <= hi) {
      sum = sum + dec.atoms[i].element;
      ++count;
    }
  }
  return trusted_tripotent(std::move(sum), count);
}

}  // namespace jbt
